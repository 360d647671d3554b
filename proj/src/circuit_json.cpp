#include "bellperm/circuit_json.hpp"

#include <fstream>
#include <stdexcept>

#include "bellperm/fnv.hpp"

namespace bellperm {

namespace {

const char* basis_name(MeasureBasis b) {
    switch (b) {
        case MeasureBasis::kX: return "X";
        case MeasureBasis::kY: return "Y";
        default: return "Z";
    }
}

MeasureBasis basis_from(const std::string& s, size_t op_index) {
    if (s == "X") return MeasureBasis::kX;
    if (s == "Y") return MeasureBasis::kY;
    if (s == "Z") return MeasureBasis::kZ;
    throw std::runtime_error("op " + std::to_string(op_index) + ": unknown basis '" + s + "'");
}

}  // namespace

nlohmann::json circuit_to_json(const Circuit& c, const GateTables& t) {
    if (const auto bad = validate(c); !bad.empty()) {
        throw std::invalid_argument("refusing to serialize invalid circuit: " + bad.front());
    }
    nlohmann::json doc;
    doc["format"] = "bellperm-circuit";
    doc["version"] = 1;
    doc["registers"] = c.register_width;
    doc["raw_pairs"] = c.declared_raw_pairs;
    doc["outputs"] = c.output_pairs;
    doc["table_hash"] = hash_to_hex(t.hash());
    auto& ops = doc["ops"] = nlohmann::json::array();
    for (const Op& op : c.ops) {
        if (const auto* np = std::get_if<NewPairOp>(&op)) {
            ops.push_back({{"op", "new_pair"}, {"reg", np->reg}});
        } else if (const auto* pp = std::get_if<PairPermuteOp>(&op)) {
            ops.push_back({{"op", "permute"}, {"perm", pp->perm_id}, {"reg", pp->reg}});
        } else if (const auto* g = std::get_if<BPGateOp>(&op)) {
            ops.push_back({{"op", "gate"},
                           {"coset", g->params.coset},
                           {"local_a", g->params.local_a},
                           {"local_b", g->params.local_b},
                           {"pauli_a", g->params.pauli_a},
                           {"pauli_b", g->params.pauli_b},
                           {"a", g->reg_a},
                           {"b", g->reg_b}});
        } else if (const auto* m = std::get_if<MeasureOp>(&op)) {
            ops.push_back({{"op", "measure"},
                           {"basis", basis_name(m->basis)},
                           {"mode", m->mode == MeasureMode::kCoincidence ? "coincidence"
                                                                         : "anticoincidence"},
                           {"reg", m->reg}});
        }
    }
    return doc;
}

Circuit circuit_from_json(const nlohmann::json& doc, const GateTables& t,
                          std::vector<std::string>* warnings) {
    if (doc.value("format", "") != "bellperm-circuit") {
        throw std::runtime_error("not a circuit document (missing format tag)");
    }
    if (doc.value("version", 0) != 1) {
        throw std::runtime_error("unsupported circuit document version");
    }
    Circuit c;
    doc.at("registers").get_to(c.register_width);
    doc.at("raw_pairs").get_to(c.declared_raw_pairs);
    doc.at("outputs").get_to(c.output_pairs);

    if (!doc.contains("table_hash")) {
        if (warnings) warnings->push_back("document carries no gate-table hash");
    } else if (doc.at("table_hash").get<std::string>() != hash_to_hex(t.hash())) {
        if (warnings) {
            warnings->push_back("document was written against different gate tables (hash " +
                                doc.at("table_hash").get<std::string>() + "); parameters are " +
                                "interpreted under the current tables");
        }
    }

    const auto& ops = doc.at("ops");
    for (size_t i = 0; i < ops.size(); ++i) {
        const auto& o = ops[i];
        const std::string kind = o.value("op", "");
        if (kind == "new_pair") {
            c.ops.push_back(NewPairOp{o.at("reg").get<uint32_t>()});
        } else if (kind == "permute") {
            c.ops.push_back(PairPermuteOp{o.at("perm").get<uint8_t>(), o.at("reg").get<uint32_t>()});
        } else if (kind == "gate") {
            GateParams p{o.at("coset").get<uint8_t>(), o.at("local_a").get<uint8_t>(),
                         o.at("local_b").get<uint8_t>(), o.at("pauli_a").get<uint8_t>(),
                         o.at("pauli_b").get<uint8_t>()};
            c.ops.push_back(BPGateOp{p, o.at("a").get<uint32_t>(), o.at("b").get<uint32_t>()});
        } else if (kind == "measure") {
            c.ops.push_back(MeasureOp{basis_from(o.at("basis").get<std::string>(), i),
                                      o.at("mode").get<std::string>() == "anticoincidence"
                                          ? MeasureMode::kAnticoincidence
                                          : MeasureMode::kCoincidence,
                                      o.at("reg").get<uint32_t>()});
        } else {
            throw std::runtime_error("op " + std::to_string(i) + ": unknown op kind '" + kind + "'");
        }
    }
    return c;
}

void write_circuit_file(const std::string& path, const Circuit& c, const GateTables& t) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << circuit_to_json(c, t).dump(1) << '\n';
}

Circuit read_circuit_file(const std::string& path, const GateTables& t,
                          std::vector<std::string>* warnings) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path);
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
    return circuit_from_json(doc, t, warnings);
}

}  // namespace bellperm
