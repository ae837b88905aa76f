#include "bbwalk/pauli.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <stdexcept>

namespace bbwalk {

namespace {

constexpr int kI = 0, kX = 1, kY = 2, kZ = 3;

// letter_product[a][b] and sign_product[a][b] for the 2x2 matrix product,
// with X = [[0,1],[1,0]], Z = [[1,0],[0,-1]], Y = XZ = [[0,-1],[1,0]].
constexpr int letter_product[4][4] = {
    {kI, kX, kY, kZ},
    {kX, kI, kZ, kY},
    {kY, kZ, kI, kX},
    {kZ, kY, kX, kI},
};
constexpr int sign_product[4][4] = {
    {+1, +1, +1, +1},
    {+1, +1, +1, +1},
    {+1, -1, -1, +1},
    {+1, -1, -1, +1},
};

}  // namespace

SignedLetter pauli_block_mul(const SignedLetter& a, const SignedLetter& b) {
    const int la = static_cast<int>(a.letter), lb = static_cast<int>(b.letter);
    return SignedLetter{a.sign * b.sign * sign_product[la][lb],
                        static_cast<PauliLetter>(letter_product[la][lb])};
}

SignedLetter pauli_block_inverse(const SignedLetter& a) {
    // I, X, Z are self-inverse; Y^{-1} = -Y. The scalar sign carries over.
    int s = a.letter == PauliLetter::Y ? -a.sign : a.sign;
    return SignedLetter{s, a.letter};
}

bool PauliWord::is_identity() const {
    return std::all_of(blocks.begin(), blocks.end(), [](const SignedLetter& b) {
        return b.sign == +1 && b.letter == PauliLetter::I;
    });
}

PauliWord pauli_identity(int k) {
    return PauliWord{std::vector<SignedLetter>(static_cast<std::size_t>(2 * k))};
}

PauliWord pauli_mul(const PauliWord& a, const PauliWord& b) {
    if (a.blocks.size() != b.blocks.size())
        throw std::invalid_argument("pauli word length mismatch");
    PauliWord out;
    out.blocks.reserve(a.blocks.size());
    for (std::size_t i = 0; i < a.blocks.size(); ++i)
        out.blocks.push_back(pauli_block_mul(a.blocks[i], b.blocks[i]));
    return out;
}

PauliWord pauli_inverse(const PauliWord& a) {
    PauliWord out;
    out.blocks.reserve(a.blocks.size());
    for (const auto& b : a.blocks) out.blocks.push_back(pauli_block_inverse(b));
    return out;
}

bool pauli_commute(const PauliWord& a, const PauliWord& b) {
    return pauli_mul(a, b) == pauli_mul(b, a);
}

std::vector<std::vector<double>> dense_block(const SignedLetter& b) {
    double s = b.sign;
    switch (b.letter) {
        case PauliLetter::I: return {{s, 0}, {0, s}};
        case PauliLetter::X: return {{0, s}, {s, 0}};
        case PauliLetter::Y: return {{0, -s}, {s, 0}};
        case PauliLetter::Z: return {{s, 0}, {0, -s}};
    }
    throw std::logic_error("bad letter");
}

FunctionOracle::FunctionOracle(int k, std::vector<int> values) : k_(k), values_(std::move(values)) {
    if (k <= 0 || k % 2 != 0) throw std::invalid_argument("k must be even and positive");
    if (static_cast<int>(values_.size()) != k)
        throw std::invalid_argument("F must have exactly k values");
    for (int v : values_)
        if (v < 1 || v > k) throw std::invalid_argument("F value out of range");
}

int FunctionOracle::eval(int i) const {
    if (i < 1 || i > k_) throw std::out_of_range("F argument out of range");
    calls_.fetch_add(1, std::memory_order_relaxed);
    return values_[static_cast<std::size_t>(i - 1)];
}

std::string FunctionOracle::to_json() const {
    nlohmann::json j{{"k", k_}, {"values", values_}};
    return j.dump();
}

FunctionOracle FunctionOracle::from_json(const std::string& text) {
    auto j = nlohmann::json::parse(text);
    return FunctionOracle(j.at("k").get<int>(), j.at("values").get<std::vector<int>>());
}

PauliWord make_generator(int i, const FunctionOracle& F) {
    const int k = F.k();
    if (i < 1 || i > k) throw std::out_of_range("generator index out of range");
    const int j = F.eval(i);
    PauliWord w = pauli_identity(k);
    w.blocks[static_cast<std::size_t>(i - 1)] = SignedLetter{+1, PauliLetter::Y};
    w.blocks[static_cast<std::size_t>(j + k - 1)] =
        SignedLetter{+1, i <= k / 2 ? PauliLetter::Z : PauliLetter::X};
    return w;
}

namespace {

// If w has the exact shape of some a_ij / b_ij (all signs +, exactly two
// non-identity blocks: Y at a position in 1..k and Z or X matching the a/b
// typing at a position in k+1..2k), return the candidate index i.
std::optional<int> generator_candidate(const PauliWord& w) {
    const int k = w.half_k();
    int y_pos = 0, tail_pos = 0;
    PauliLetter tail_letter = PauliLetter::I;
    int non_identity = 0;
    for (int pos = 1; pos <= 2 * k; ++pos) {
        const auto& b = w.blocks[static_cast<std::size_t>(pos - 1)];
        if (b.sign != +1) return std::nullopt;
        if (b.letter == PauliLetter::I) continue;
        ++non_identity;
        if (b.letter == PauliLetter::Y && pos <= k && y_pos == 0) {
            y_pos = pos;
        } else if (pos > k && (b.letter == PauliLetter::Z || b.letter == PauliLetter::X) &&
                   tail_pos == 0) {
            tail_pos = pos;
            tail_letter = b.letter;
        } else {
            return std::nullopt;
        }
    }
    if (non_identity != 2 || y_pos == 0 || tail_pos == 0) return std::nullopt;
    const PauliLetter expected = y_pos <= k / 2 ? PauliLetter::Z : PauliLetter::X;
    if (tail_letter != expected) return std::nullopt;
    return y_pos;
}

PauliWord resolve(const ReducedEncoding& e, const FunctionOracle& F) {
    if (!e.is_index()) return e.word();
    PauliWord w = make_generator(e.index(), F);
    F.eval(e.index());  // erase
    return w;
}

}  // namespace

ReducedEncoding reduced_group_op(const ReducedEncoding& x, const ReducedEncoding& y,
                                 const FunctionOracle& F, bool inverse_flag) {
    const bool both_indices = x.is_index() && y.is_index();
    PauliWord xw = resolve(x, F);
    if (inverse_flag) xw = pauli_inverse(xw);
    PauliWord yw = resolve(y, F);
    if (static_cast<int>(xw.blocks.size()) != 2 * F.k() ||
        static_cast<int>(yw.blocks.size()) != 2 * F.k())
        throw invalid_encoding_error("word length does not match oracle k");
    PauliWord product = pauli_mul(xw, yw);

    // A product of two generators is never a generator, so the re-encoding
    // check is only spent when at least one operand was explicit.
    if (!both_indices) {
        if (auto i = generator_candidate(product)) {
            const int j = F.eval(*i);  // check
            F.eval(*i);                // erase
            const int tail = j + F.k();
            if (product.blocks[static_cast<std::size_t>(tail - 1)].letter != PauliLetter::I)
                return ReducedEncoding{*i};
        }
    }
    return ReducedEncoding{std::move(product)};
}

bool commutes(int i, int j, const FunctionOracle& F) {
    if (i == j) throw std::invalid_argument("commutes requires distinct indices");
    auto ij = reduced_group_op(ReducedEncoding{i}, ReducedEncoding{j}, F);
    auto ji = reduced_group_op(ReducedEncoding{j}, ReducedEncoding{i}, F);
    return ij == ji;
}

FunctionOracle usc_instance(int k, UscKind kind, std::uint64_t seed) {
    if (k < 2 || k % 2 != 0) throw std::invalid_argument("k must be even, k >= 2");
    Rng rng(seed);
    std::vector<int> values(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) values[static_cast<std::size_t>(i)] = i + 1;
    for (int i = k - 1; i > 0; --i) {
        auto j = static_cast<int>(randrange(rng, static_cast<std::uint64_t>(i + 1)));
        std::swap(values[static_cast<std::size_t>(i)], values[static_cast<std::size_t>(j)]);
    }
    if (kind == UscKind::SplitCollision) {
        const int x = 1 + static_cast<int>(randrange(rng, static_cast<std::uint64_t>(k / 2)));
        const int y = k / 2 + 1 + static_cast<int>(randrange(rng, static_cast<std::uint64_t>(k / 2)));
        values[static_cast<std::size_t>(y - 1)] = values[static_cast<std::size_t>(x - 1)];
    }
    return FunctionOracle(k, std::move(values));
}

std::optional<std::pair<int, int>> find_split_collision(const FunctionOracle& F) {
    const int k = F.k();
    const auto& v = F.values();
    for (int x = 1; x <= k / 2; ++x)
        for (int y = k / 2 + 1; y <= k; ++y)
            if (v[static_cast<std::size_t>(x - 1)] == v[static_cast<std::size_t>(y - 1)])
                return std::make_pair(x, y);
    return std::nullopt;
}

namespace {

int index_bits(int k) {
    int n = 1;
    while ((1 << n) < k) ++n;
    return n;
}

}  // namespace

PauliGroup::PauliGroup(std::shared_ptr<FunctionOracle> F)
    : BlackBoxGroup(1 + 6 * F->k(), GroupElement{}, 0), F_(std::move(F)) {
    set_identity(encode(ReducedEncoding{pauli_identity(F_->k())}));
}

GroupElement PauliGroup::encode(const ReducedEncoding& e) const {
    const int k = F_->k();
    std::string w(static_cast<std::size_t>(encoding_length()), '0');
    if (e.is_index()) {
        const int i = e.index() - 1;
        if (i < 0 || i >= k) throw invalid_encoding_error("index out of range");
        for (int b = 0; b < index_bits(k); ++b)
            if (i & (1 << b)) w[static_cast<std::size_t>(1 + b)] = '1';
    } else {
        const auto& word = e.word();
        if (static_cast<int>(word.blocks.size()) != 2 * k)
            throw invalid_encoding_error("word length does not match k");
        w[0] = '1';
        for (int b = 0; b < 2 * k; ++b) {
            const auto& blk = word.blocks[static_cast<std::size_t>(b)];
            if (blk.sign < 0) w[static_cast<std::size_t>(1 + b)] = '1';
            const int letter = static_cast<int>(blk.letter);
            if (letter & 1) w[static_cast<std::size_t>(1 + 2 * k + 2 * b)] = '1';
            if (letter & 2) w[static_cast<std::size_t>(1 + 2 * k + 2 * b + 1)] = '1';
        }
    }
    return GroupElement{std::move(w)};
}

ReducedEncoding PauliGroup::decode(const GroupElement& g) const {
    const int k = F_->k();
    if (static_cast<int>(g.word.size()) != encoding_length())
        throw invalid_encoding_error("wrong encoding length");
    for (char c : g.word)
        if (c != '0' && c != '1') throw invalid_encoding_error("non-binary word");
    if (g.word[0] == '0') {
        int i = 0;
        for (int b = 0; b < index_bits(k); ++b)
            if (g.word[static_cast<std::size_t>(1 + b)] == '1') i |= 1 << b;
        for (int b = index_bits(k); b < 6 * k; ++b)
            if (g.word[static_cast<std::size_t>(1 + b)] == '1')
                throw invalid_encoding_error("stray bits in index encoding");
        if (i >= k) throw invalid_encoding_error("index out of range");
        return ReducedEncoding{i + 1};
    }
    PauliWord word = pauli_identity(k);
    for (int b = 0; b < 2 * k; ++b) {
        auto& blk = word.blocks[static_cast<std::size_t>(b)];
        blk.sign = g.word[static_cast<std::size_t>(1 + b)] == '1' ? -1 : +1;
        int letter = 0;
        if (g.word[static_cast<std::size_t>(1 + 2 * k + 2 * b)] == '1') letter |= 1;
        if (g.word[static_cast<std::size_t>(1 + 2 * k + 2 * b + 1)] == '1') letter |= 2;
        blk.letter = static_cast<PauliLetter>(letter);
    }
    return ReducedEncoding{std::move(word)};
}

GeneratorList PauliGroup::generators() const {
    GeneratorList gens;
    gens.elements.push_back(identity());
    for (int i = 1; i <= F_->k(); ++i) gens.elements.push_back(encode(ReducedEncoding{i}));
    return gens;
}

GroupElement PauliGroup::do_mul(const GroupElement& g, const GroupElement& h) const {
    return encode(reduced_group_op(decode(g), decode(h), *F_, false));
}

GroupElement PauliGroup::do_inv_mul(const GroupElement& g, const GroupElement& h) const {
    return encode(reduced_group_op(decode(g), decode(h), *F_, true));
}

}  // namespace bbwalk
