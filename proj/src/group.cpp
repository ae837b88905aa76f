#include "bbwalk/group.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace bbwalk {

namespace {

int bits_for(std::uint64_t m) {
    int n = 1;
    while ((1ull << n) < m) ++n;
    return n;
}

std::string encode_index(int index, int n) {
    std::string w(static_cast<std::size_t>(n), '0');
    for (int b = 0; b < n; ++b) {
        if (index & (1 << b)) w[static_cast<std::size_t>(b)] = '1';  // little-endian
    }
    return w;
}

}  // namespace

TableGroup::TableGroup(std::vector<std::vector<int>> table)
    : BlackBoxGroup(bits_for(table.size()), GroupElement{}, table.size()),
      table_(std::move(table)) {
    const int m = static_cast<int>(table_.size());
    if (m == 0) throw not_a_group_error("empty table");
    for (const auto& row : table_) {
        if (static_cast<int>(row.size()) != m)
            throw not_a_group_error("table is not square");
        for (int v : row)
            if (v < 0 || v >= m) throw not_a_group_error("closure violated: entry out of range");
    }
    // identity: a two-sided neutral element
    for (int e = 0; e < m; ++e) {
        bool ok = true;
        for (int g = 0; g < m && ok; ++g)
            ok = table_[e][g] == g && table_[g][e] == g;
        if (ok) {
            identity_index_ = e;
            break;
        }
    }
    if (identity_index_ < 0) throw not_a_group_error("no identity element");
    inverse_.assign(static_cast<std::size_t>(m), -1);
    for (int g = 0; g < m; ++g) {
        for (int h = 0; h < m; ++h) {
            if (table_[g][h] == identity_index_ && table_[h][g] == identity_index_) {
                inverse_[static_cast<std::size_t>(g)] = h;
                break;
            }
        }
        if (inverse_[static_cast<std::size_t>(g)] < 0)
            throw not_a_group_error("element " + std::to_string(g) + " has no inverse");
    }
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b)
            for (int c = 0; c < m; ++c)
                if (table_[table_[a][b]][c] != table_[a][table_[b][c]])
                    throw not_a_group_error("associativity fails on triple (" + std::to_string(a) +
                                            "," + std::to_string(b) + "," + std::to_string(c) + ")");
    set_identity(element(identity_index_));
}

GroupElement TableGroup::element(int index) const {
    return GroupElement{encode_index(index, encoding_length())};
}

int TableGroup::index_of(const GroupElement& g) const {
    if (static_cast<int>(g.word.size()) != encoding_length())
        throw invalid_encoding_error("wrong encoding length");
    int index = 0;
    for (int b = 0; b < encoding_length(); ++b) {
        char c = g.word[static_cast<std::size_t>(b)];
        if (c != '0' && c != '1') throw invalid_encoding_error("non-binary word");
        if (c == '1') index |= 1 << b;
    }
    if (index >= static_cast<int>(table_.size()))
        throw invalid_encoding_error("word does not encode a group element");
    return index;
}

std::vector<GroupElement> TableGroup::elements() const {
    std::vector<GroupElement> out;
    out.reserve(table_.size());
    for (int i = 0; i < static_cast<int>(table_.size()); ++i) out.push_back(element(i));
    return out;
}

GroupElement TableGroup::do_mul(const GroupElement& g, const GroupElement& h) const {
    return element(table_[index_of(g)][index_of(h)]);
}

GroupElement TableGroup::do_inv_mul(const GroupElement& g, const GroupElement& h) const {
    return element(table_[inverse_[static_cast<std::size_t>(index_of(g))]][index_of(h)]);
}

std::shared_ptr<TableGroup> make_table_group(std::vector<std::vector<int>> table) {
    return std::make_shared<TableGroup>(std::move(table));
}

std::shared_ptr<TableGroup> load_table_group(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open table file: " + path);
    int m = 0;
    if (!(in >> m) || m <= 0) throw not_a_group_error("bad table header in " + path);
    std::vector<std::vector<int>> table(static_cast<std::size_t>(m),
                                        std::vector<int>(static_cast<std::size_t>(m)));
    for (auto& row : table)
        for (auto& v : row) {
            if (!(in >> v)) throw not_a_group_error("truncated table in " + path);
            v -= 1;  // file is 1-based
        }
    return make_table_group(std::move(table));
}

namespace {

Permutation compose(const Permutation& p, const Permutation& q) {
    Permutation r(p.size());
    for (std::size_t i = 0; i < p.size(); ++i)
        r[i] = p[static_cast<std::size_t>(q[i])];
    return r;
}

}  // namespace

std::pair<std::shared_ptr<TableGroup>, GeneratorList> make_permutation_group(
    int degree, const std::vector<Permutation>& generator_perms, std::uint64_t cap) {
    Permutation id(static_cast<std::size_t>(degree));
    for (int i = 0; i < degree; ++i) id[static_cast<std::size_t>(i)] = i;
    for (const auto& p : generator_perms) {
        if (static_cast<int>(p.size()) != degree)
            throw std::invalid_argument("generator degree mismatch");
        Permutation sorted = p;
        std::sort(sorted.begin(), sorted.end());
        if (sorted != id) throw std::invalid_argument("not a permutation of {0..m-1}");
    }

    std::map<Permutation, int> index;
    std::vector<Permutation> elems;
    auto intern = [&](const Permutation& p) {
        auto [it, inserted] = index.emplace(p, static_cast<int>(elems.size()));
        if (inserted) elems.push_back(p);
        return it->second;
    };
    intern(id);
    for (std::size_t frontier = 0; frontier < elems.size(); ++frontier) {
        for (const auto& g : generator_perms) {
            intern(compose(g, elems[frontier]));
            if (elems.size() > cap)
                throw cap_exceeded_error("generated group exceeds enumeration cap");
        }
    }

    const int m = static_cast<int>(elems.size());
    std::vector<std::vector<int>> table(static_cast<std::size_t>(m),
                                        std::vector<int>(static_cast<std::size_t>(m)));
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b)
            table[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] =
                index.at(compose(elems[static_cast<std::size_t>(a)], elems[static_cast<std::size_t>(b)]));

    auto group = make_table_group(std::move(table));
    GeneratorList gens;
    gens.elements.push_back(group->element(group->identity_index()));
    for (const auto& p : generator_perms) gens.elements.push_back(group->element(index.at(p)));
    return {group, gens};
}

std::vector<std::vector<int>> list_proper_subgroups(const TableGroup& group, std::uint64_t cap) {
    const int m = static_cast<int>(group.size());
    if (group.size() > cap) throw cap_exceeded_error("group order exceeds enumeration cap");

    auto closure = [&](std::vector<int> seed) {
        std::set<int> members(seed.begin(), seed.end());
        std::vector<int> frontier(members.begin(), members.end());
        while (!frontier.empty()) {
            std::vector<int> next;
            for (int a : frontier)
                for (int b : members) {
                    for (int c : {group.mul_index(a, b), group.mul_index(b, a),
                                  group.inverse_index(a)}) {
                        if (members.insert(c).second) next.push_back(c);
                    }
                }
            frontier = std::move(next);
        }
        return std::vector<int>(members.begin(), members.end());
    };

    std::set<std::vector<int>> found;
    std::vector<std::vector<int>> queue;
    std::vector<int> trivial{group.identity_index()};
    found.insert(trivial);
    queue.push_back(trivial);
    while (!queue.empty()) {
        auto sub = queue.back();
        queue.pop_back();
        std::set<int> members(sub.begin(), sub.end());
        for (int g = 0; g < m; ++g) {
            if (members.count(g)) continue;
            auto seed = sub;
            seed.push_back(g);
            auto bigger = closure(std::move(seed));
            if (found.insert(bigger).second) queue.push_back(std::move(bigger));
        }
    }
    std::vector<std::vector<int>> proper;
    for (const auto& sub : found)
        if (static_cast<int>(sub.size()) < m) proper.push_back(sub);
    return proper;
}

bool is_abelian(const TableGroup& group) {
    const int m = static_cast<int>(group.size());
    for (int a = 0; a < m; ++a)
        for (int b = a + 1; b < m; ++b)
            if (group.mul_index(a, b) != group.mul_index(b, a)) return false;
    return true;
}

}  // namespace bbwalk
