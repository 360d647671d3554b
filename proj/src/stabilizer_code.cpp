#include "bellperm/stabilizer_code.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace bellperm {
namespace {

// Pack a pattern as x | z << n so F2 row reduction can treat it as one word.
uint64_t pack(const ErrorPattern& p, int n) {
    return p.x | static_cast<uint64_t>(p.z) << n;
}

ErrorPattern unpack(uint64_t v, int n) {
    const uint32_t mask = (n == 32) ? ~0u : ((1u << n) - 1);
    return {static_cast<uint32_t>(v) & mask, static_cast<uint32_t>(v >> n) & mask};
}

int symplectic(const ErrorPattern& a, const ErrorPattern& b) {
    return (std::popcount(a.x & b.z) ^ std::popcount(a.z & b.x)) & 1;
}

bool reduce_to_zero(const std::vector<uint64_t>& rows, uint64_t v) {
    for (int b = 63; b >= 0 && v; --b) {
        if (!((v >> b) & 1)) continue;
        if (!rows[static_cast<size_t>(b)]) return false;
        v ^= rows[static_cast<size_t>(b)];
    }
    return v == 0;
}

// Inserts v into an echelon basis indexed by leading bit; returns false if v
// was already in the span.
bool insert_row(std::vector<uint64_t>& rows, uint64_t v) {
    for (int b = 63; b >= 0; --b) {
        if (!((v >> b) & 1)) continue;
        if (rows[static_cast<size_t>(b)]) {
            v ^= rows[static_cast<size_t>(b)];
            continue;
        }
        rows[static_cast<size_t>(b)] = v;
        return true;
    }
    return false;
}

}  // namespace

PauliLetter pair_to_pauli(uint8_t code) {
    // kPauliPhaseMask[letter] XORed onto a code realizes the letter's
    // one-sided action, so the correction for `code` is the letter whose
    // mask is code ^ A.  Inverse table: mask 0,1,2,3 -> I,Z,X,Y.
    static constexpr PauliLetter kMaskToLetter[4] = {kPauliI, kPauliZ, kPauliX,
                                                     kPauliY};
    return kMaskToLetter[static_cast<int>(code) ^ kBellA];
}

ErrorPattern pattern_from_codes(const std::vector<uint8_t>& codes) {
    if (codes.size() > 32)
        throw std::invalid_argument("error pattern limited to 32 qubits");
    ErrorPattern p;
    for (size_t q = 0; q < codes.size(); ++q) {
        const PauliLetter l = pair_to_pauli(codes[q]);
        if (l == kPauliX || l == kPauliY) p.x |= 1u << q;
        if (l == kPauliZ || l == kPauliY) p.z |= 1u << q;
    }
    return p;
}

StabilizerCode::StabilizerCode(std::string name, int distance,
                               std::vector<PauliOperator> generators)
    : name_(std::move(name)), distance_(distance), generators_(std::move(generators)) {
    if (generators_.empty())
        throw std::invalid_argument(name_ + ": no generators");
    n_ = static_cast<int>(generators_[0].n);
    if (n_ < 2 || n_ > 24)
        throw std::invalid_argument(name_ + ": supported sizes are 2..24 qubits");
    span_rows_.assign(64, 0);
    for (const PauliOperator& g : generators_) {
        if (static_cast<int>(g.n) != n_)
            throw std::invalid_argument(name_ + ": generators differ in qubit count");
        if (!g.is_hermitian())
            throw std::invalid_argument(name_ + ": non-Hermitian generator");
        gens_.push_back({g.x, g.z});
    }
    for (size_t i = 0; i < gens_.size(); ++i)
        for (size_t j = i + 1; j < gens_.size(); ++j)
            if (symplectic(gens_[i], gens_[j]))
                throw std::invalid_argument(name_ + ": generators " + std::to_string(i) +
                                            " and " + std::to_string(j) + " anticommute");
    for (size_t i = 0; i < gens_.size(); ++i)
        if (!insert_row(span_rows_, pack(gens_[i], n_)))
            throw std::invalid_argument(name_ + ": generator " + std::to_string(i) +
                                        " is dependent on the others");
    if (gens_.size() != static_cast<size_t>(n_ - 1))
        throw std::invalid_argument(name_ + ": expected " + std::to_string(n_ - 1) +
                                    " generators, got " + std::to_string(gens_.size()));
    const int d = min_logical_weight();
    if (d != distance_)
        throw std::invalid_argument(name_ + ": declared distance " +
                                    std::to_string(distance_) + " but computed " +
                                    std::to_string(d));
}

uint32_t StabilizerCode::syndrome(const ErrorPattern& p) const {
    uint32_t s = 0;
    for (size_t g = 0; g < gens_.size(); ++g)
        s |= static_cast<uint32_t>(symplectic(p, gens_[g])) << g;
    return s;
}

bool StabilizerCode::in_stabilizer(const ErrorPattern& p) const {
    return reduce_to_zero(span_rows_, pack(p, n_));
}

int StabilizerCode::min_logical_weight() const {
    // Commutant = nullspace of the check matrix whose row for generator
    // (x, z) is z | x << n, so an F2 dot product is the symplectic form.
    std::vector<uint64_t> m;
    for (const ErrorPattern& g : gens_)
        m.push_back(g.z | static_cast<uint64_t>(g.x) << n_);
    std::vector<int> pivot;
    std::vector<bool> used(static_cast<size_t>(2 * n_), false);
    size_t r = 0;
    for (int col = 0; col < 2 * n_ && r < m.size(); ++col) {
        size_t p = r;
        while (p < m.size() && !((m[p] >> col) & 1)) ++p;
        if (p == m.size()) continue;
        std::swap(m[r], m[p]);
        for (size_t i = 0; i < m.size(); ++i)
            if (i != r && ((m[i] >> col) & 1)) m[i] ^= m[r];
        pivot.push_back(col);
        used[static_cast<size_t>(col)] = true;
        ++r;
    }
    std::vector<uint64_t> null_basis;
    for (int col = 0; col < 2 * n_; ++col) {
        if (used[static_cast<size_t>(col)]) continue;
        uint64_t v = 1ull << col;
        for (size_t i = 0; i < r; ++i)
            if ((m[i] >> col) & 1) v |= 1ull << pivot[i];
        null_basis.push_back(v);
    }
    int best = 2 * n_;
    for (uint64_t c = 1; c < (1ull << null_basis.size()); ++c) {
        uint64_t v = 0;
        for (uint64_t t = c; t; t &= t - 1)
            v ^= null_basis[static_cast<size_t>(std::countr_zero(t))];
        if (reduce_to_zero(span_rows_, v)) continue;
        best = std::min(best, unpack(v, n_).weight());
    }
    return best;
}

StabilizerCode StabilizerCode::five_qubit() {
    return StabilizerCode("five_qubit", 3,
                          {PauliOperator::from_letters("+XZZXI"),
                           PauliOperator::from_letters("+IXZZX"),
                           PauliOperator::from_letters("+XIXZZ"),
                           PauliOperator::from_letters("+ZXIXZ")});
}

StabilizerCode StabilizerCode::eleven_qubit() {
    // Matches data/codes/eleven_qubit.stab; see that file for the
    // construction and the regeneration tool.
    return StabilizerCode("eleven_qubit", 5,
                          {PauliOperator::from_letters("+XXIXXIXXIXX"),
                           PauliOperator::from_letters("+YZYIIXIXIXI"),
                           PauliOperator::from_letters("+ZIXZXXIIXII"),
                           PauliOperator::from_letters("+ZZXYYIXIXXI"),
                           PauliOperator::from_letters("+YYYZYZXIXII"),
                           PauliOperator::from_letters("+YXIYZZZIIII"),
                           PauliOperator::from_letters("+YIZZIIYZXII"),
                           PauliOperator::from_letters("+XIYXZYYIYXI"),
                           PauliOperator::from_letters("+XIIZIZZZIZI"),
                           PauliOperator::from_letters("+IXIIZIZZZIZ")});
}

StabilizerCode StabilizerCode::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open code file " + path);
    std::string name;
    int distance = -1;
    std::vector<PauliOperator> generators;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        while (!line.empty() && (line.back() == '\r' || line.back() == ' '))
            line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        std::istringstream fields(line);
        std::string head;
        fields >> head;
        if (head == "code") {
            if (!(fields >> name))
                throw std::runtime_error(path + ":" + std::to_string(line_no) +
                                         ": missing code name");
        } else if (head == "distance") {
            if (!(fields >> distance) || distance < 1)
                throw std::runtime_error(path + ":" + std::to_string(line_no) +
                                         ": bad distance");
        } else {
            try {
                generators.push_back(PauliOperator::from_letters(line));
            } catch (const std::invalid_argument& e) {
                throw std::runtime_error(path + ":" + std::to_string(line_no) + ": " +
                                         e.what());
            }
        }
    }
    if (name.empty())
        throw std::runtime_error(path + ": missing 'code <name>' line");
    if (distance < 0)
        throw std::runtime_error(path + ": missing 'distance <d>' line");
    return StabilizerCode(name, distance, std::move(generators));
}

PatternDecoder::PatternDecoder(StabilizerCode code) : code_(std::move(code)) {
    const int n = code_.n_phys();
    const uint32_t syndrome_count = 1u << (n - 1);
    leaders_.assign(syndrome_count, ErrorPattern{});
    std::vector<bool> seen(syndrome_count, false);
    uint32_t found = 0;
    // Weight-0 leader: the zero syndrome maps to the identity correction.
    seen[0] = true;
    ++found;
    for (int w = 1; w <= n && found < syndrome_count; ++w) {
        // Supports of weight w in increasing binary order (Gosper's hack),
        // then letter assignments counted in base 3, lowest qubit first.
        uint32_t support = (1u << w) - 1;
        const uint32_t limit = 1u << n;
        uint64_t letter_count = 1;
        for (int i = 0; i < w; ++i) letter_count *= 3;
        while (support < limit && found < syndrome_count) {
            int bits[32];
            int nb = 0;
            for (uint32_t s = support; s; s &= s - 1)
                bits[nb++] = std::countr_zero(s);
            for (uint64_t t = 0; t < letter_count && found < syndrome_count; ++t) {
                ErrorPattern p;
                uint64_t digits = t;
                for (int i = 0; i < nb; ++i) {
                    // 0 -> X, 1 -> Y, 2 -> Z
                    const int d = static_cast<int>(digits % 3);
                    digits /= 3;
                    if (d != 2) p.x |= 1u << bits[i];
                    if (d != 0) p.z |= 1u << bits[i];
                }
                const uint32_t s = code_.syndrome(p);
                if (seen[s]) continue;
                seen[s] = true;
                leaders_[s] = p;
                ++found;
            }
            const uint32_t c = support & (0u - support);
            const uint32_t r = support + c;
            support = r | (((support ^ r) >> 2) / c);
        }
    }
    if (found != syndrome_count)
        throw std::logic_error(code_.name() + ": syndrome table incomplete");
}

ErrorPattern PatternDecoder::leader(uint32_t syndrome) const {
    return leaders_.at(syndrome);
}

DecodeResult PatternDecoder::classify(const ErrorPattern& p) const {
    const ErrorPattern l = leaders_[code_.syndrome(p)];
    const ErrorPattern residual{p.x ^ l.x, p.z ^ l.z};
    if (residual.x == 0 && residual.z == 0) return DecodeResult::kExactRecovery;
    return code_.in_stabilizer(residual) ? DecodeResult::kDegenerateRecovery
                                         : DecodeResult::kLogicalError;
}

namespace {

template <typename Accept>
double scored_fraction(const std::vector<std::vector<uint8_t>>& samples, int n_phys,
                       Accept&& accept) {
    if (samples.empty()) throw std::invalid_argument("no accepted samples");
    size_t good = 0;
    for (const std::vector<uint8_t>& sample : samples) {
        if (sample.size() != static_cast<size_t>(n_phys))
            throw std::invalid_argument("sample has " + std::to_string(sample.size()) +
                                        " pairs but the code has " +
                                        std::to_string(n_phys) + " qubits");
        if (accept(pattern_from_codes(sample))) ++good;
    }
    return static_cast<double>(good) / static_cast<double>(samples.size());
}

}  // namespace

double logical_fidelity_threshold(const std::vector<std::vector<uint8_t>>& samples,
                                  const StabilizerCode& code) {
    return scored_fraction(samples, code.n_phys(), [&](const ErrorPattern& p) {
        return p.weight() <= code.correctable_weight();
    });
}

double logical_fidelity_decoder(const std::vector<std::vector<uint8_t>>& samples,
                                const PatternDecoder& decoder) {
    return scored_fraction(samples, decoder.code().n_phys(),
                           [&](const ErrorPattern& p) { return decoder.corrects(p); });
}

}  // namespace bellperm
