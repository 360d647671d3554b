#include "bellperm/gate_tables.hpp"

#include <cstdlib>
#include <fstream>
#include <stdexcept>
#include <unordered_map>

#include <json.hpp>

#include "bellperm/clifford_enum.hpp"
#include "bellperm/fnv.hpp"

namespace bellperm {

namespace {

// Conjugation by a single-qubit Pauli, as a gate: it flips the sign of the
// generators it anticommutes with.
CliffordGate pauli_conjugation(PauliLetter p) {
    PauliOperator ix = PauliOperator::single(1, 0, kPauliX);
    PauliOperator iz = PauliOperator::single(1, 0, kPauliZ);
    if (p == kPauliY || p == kPauliZ) ix = -ix;
    if (p == kPauliX || p == kPauliY) iz = -iz;
    return CliffordGate::from_images({ix}, {iz});
}

uint8_t joint_code_after(const CliffordGate& four_qubit, uint8_t joint) {
    StabilizerTableau t = bell_pair_tableau({static_cast<uint8_t>(joint >> 2),
                                             static_cast<uint8_t>(joint & 3)});
    t.apply(four_qubit);
    return static_cast<uint8_t>((read_pair_code(t, 0, 2) << 2) | read_pair_code(t, 1, 2));
}

const std::unordered_map<uint64_t, uint16_t>& two_qubit_class_index() {
    static const std::unordered_map<uint64_t, uint16_t> cached = [] {
        std::unordered_map<uint64_t, uint16_t> m;
        const auto& c2 = enumerate_two_qubit_phaseless();
        for (uint16_t i = 0; i < c2.size(); ++i) m.emplace(c2[i].phaseless_key(), i);
        return m;
    }();
    return cached;
}

std::string g_override_path;

}  // namespace

GateTables GateTables::derive() {
    GateTables t;
    const auto& c1 = enumerate_single_qubit_phaseless();
    const auto& c2 = enumerate_two_qubit_phaseless();

    // One-sided Pauli masks, checked to be input-independent.
    for (uint8_t p = 0; p < 4; ++p) {
        const CliffordGate g = pauli_conjugation(static_cast<PauliLetter>(p)).embed(2, {0});
        uint8_t mask = 0;
        for (uint8_t c = 0; c < 4; ++c) {
            StabilizerTableau st = bell_pair_tableau({c});
            st.apply(g);
            const uint8_t m = c ^ read_pair_code(st, 0, 1);
            if (c == 0) mask = m;
            if (m != mask) throw std::logic_error("one-sided Pauli is not a uniform code XOR");
        }
        t.pauli_mask[p] = mask;
    }

    // Single-pair permutations of the 6 single-qubit classes.
    for (uint32_t h = 0; h < kNumLocalClasses; ++h) {
        const CliffordGate g = bilateral(c1[h], 1);
        for (uint8_t c = 0; c < 4; ++c) {
            StabilizerTableau st = bell_pair_tableau({c});
            st.apply(g);
            t.local_perm[h][c] = read_pair_code(st, 0, 1);
        }
    }

    // Walk the two-qubit classes in enumeration order; the first member of
    // each coset of the single-qubit-product subgroup becomes its
    // representative, and right-multiplying by the 36 products assigns the
    // factorization of every other member of that coset.
    std::unordered_map<uint64_t, GateFactor> assigned;
    assigned.reserve(c2.size());
    uint8_t next_coset = 0;
    for (const CliffordGate& rep : c2) {
        if (assigned.contains(rep.phaseless_key())) continue;
        if (next_coset == kNumCosets) throw std::logic_error("more cosets than expected");
        const CliffordGate brep = bilateral(rep, 2);
        for (uint8_t j = 0; j < 16; ++j) t.coset_perm[next_coset][j] = joint_code_after(brep, j);
        for (uint8_t h = 0; h < kNumLocalClasses; ++h) {
            for (uint8_t f = 0; f < kNumLocalClasses; ++f) {
                const CliffordGate hf = c1[h].embed(2, {0}).after(c1[f].embed(2, {1}));
                const CliffordGate g = rep.after(hf);
                if (!assigned.emplace(g.phaseless_key(), GateFactor{next_coset, h, f}).second) {
                    throw std::logic_error("coset members collided");
                }
            }
        }
        ++next_coset;
    }
    if (next_coset != kNumCosets) throw std::logic_error("coset walk did not find 20 cosets");

    for (uint16_t i = 0; i < c2.size(); ++i) t.class_factor[i] = assigned.at(c2[i].phaseless_key());

    t.cnot_id = t.gate_id_for(cnot_gate());
    t.cz_id = t.gate_id_for(cz_gate());
    t.swap_id = t.gate_id_for(swap_gate());
    return t;
}

uint16_t GateTables::gate_id_for(const CliffordGate& two_qubit, uint8_t pauli_a, uint8_t pauli_b) const {
    if (pauli_a > 3 || pauli_b > 3) throw std::invalid_argument("Pauli index out of range");
    const auto& index = two_qubit_class_index();
    const auto it = index.find(two_qubit.phaseless_key());
    if (it == index.end()) throw std::invalid_argument("gate is not a two-qubit Clifford class");
    const GateFactor f = class_factor[it->second];
    return pack_gate_id({f.coset, f.local_a, f.local_b, pauli_a, pauli_b});
}

uint64_t GateTables::hash() const {
    Fnv1a64 h;
    for (uint8_t m : pauli_mask) h.update_u8(m);
    for (const auto& row : local_perm) h.update(row.data(), row.size());
    for (const auto& row : coset_perm) h.update(row.data(), row.size());
    for (const GateFactor& f : class_factor) {
        h.update_u8(f.coset);
        h.update_u8(f.local_a);
        h.update_u8(f.local_b);
    }
    h.update_u16(cnot_id);
    h.update_u16(cz_id);
    h.update_u16(swap_id);
    return h.digest();
}

void GateTables::write_json_file(const std::string& path) const {
    nlohmann::json j;
    j["format"] = "bellperm-gate-tables";
    j["version"] = 1;
    j["pauli_mask"] = pauli_mask;
    j["local_perm"] = local_perm;
    j["coset_perm"] = coset_perm;
    auto& factors = j["class_factor"] = nlohmann::json::array();
    for (const GateFactor& f : class_factor) factors.push_back({f.coset, f.local_a, f.local_b});
    j["named_gates"] = {{"cnot", cnot_id}, {"cz", cz_id}, {"swap", swap_id}};
    j["hash"] = hash_to_hex(hash());
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << j.dump(1) << '\n';
}

GateTables GateTables::from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path);
    nlohmann::json j = nlohmann::json::parse(in);
    if (j.value("format", "") != "bellperm-gate-tables") {
        throw std::runtime_error(path + ": not a gate tables file");
    }
    GateTables t;
    j.at("pauli_mask").get_to(t.pauli_mask);
    j.at("local_perm").get_to(t.local_perm);
    j.at("coset_perm").get_to(t.coset_perm);
    const auto& factors = j.at("class_factor");
    if (factors.size() != kNumTwoQubitClasses) throw std::runtime_error(path + ": bad class_factor size");
    for (uint32_t i = 0; i < kNumTwoQubitClasses; ++i) {
        t.class_factor[i] = {factors[i].at(0).get<uint8_t>(), factors[i].at(1).get<uint8_t>(),
                             factors[i].at(2).get<uint8_t>()};
    }
    t.cnot_id = j.at("named_gates").at("cnot").get<uint16_t>();
    t.cz_id = j.at("named_gates").at("cz").get<uint16_t>();
    t.swap_id = j.at("named_gates").at("swap").get<uint16_t>();

    if (hash_to_hex(t.hash()) != j.at("hash").get<std::string>()) {
        throw std::runtime_error(path + ": table hash mismatch");
    }
    for (const auto& row : t.local_perm) {
        uint8_t seen = 0;
        for (uint8_t v : row) {
            if (v > 3) throw std::runtime_error(path + ": local_perm entry out of range");
            seen |= 1u << v;
        }
        if (seen != 0xf) throw std::runtime_error(path + ": local_perm row is not a permutation");
    }
    for (const auto& row : t.coset_perm) {
        uint16_t seen = 0;
        for (uint8_t v : row) {
            if (v > 15) throw std::runtime_error(path + ": coset_perm entry out of range");
            seen |= 1u << v;
        }
        if (seen != 0xffff) throw std::runtime_error(path + ": coset_perm row is not a permutation");
    }
    return t;
}

void GateTables::use_file(const std::string& path) { g_override_path = path; }

const GateTables& GateTables::instance() {
    static const GateTables t = [] {
        std::string path = g_override_path;
        if (path.empty()) {
            if (const char* env = std::getenv("BELLPERM_TABLES")) path = env;
        }
        return path.empty() ? derive() : from_json_file(path);
    }();
    return t;
}

std::vector<std::array<uint8_t, 16>> fused_two_pair_table(const GateTables& t) {
    std::vector<std::array<uint8_t, 16>> fused(kNumTwoPairGates);
    for (uint32_t id = 0; id < kNumTwoPairGates; ++id) {
        for (uint8_t j = 0; j < 16; ++j) fused[id][j] = t.apply_joint(static_cast<uint16_t>(id), j);
    }
    return fused;
}

std::string hash_to_hex(uint64_t h) {
    static const char* digits = "0123456789abcdef";
    std::string s(16, '0');
    for (int i = 15; i >= 0; --i) {
        s[i] = digits[h & 0xf];
        h >>= 4;
    }
    return s;
}

uint64_t hash_from_hex(const std::string& s) {
    uint64_t h = 0;
    for (char c : s) {
        h <<= 4;
        if (c >= '0' && c <= '9') h |= static_cast<uint64_t>(c - '0');
        else if (c >= 'a' && c <= 'f') h |= static_cast<uint64_t>(c - 'a' + 10);
        else if (c >= 'A' && c <= 'F') h |= static_cast<uint64_t>(c - 'A' + 10);
        else throw std::invalid_argument("bad hex digit");
    }
    return h;
}

}  // namespace bellperm
