#include "latkit/catalog.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>

#include "latkit/isomorphism.hpp"

namespace latkit {

namespace {

std::string subset_label(std::uint32_t mask, std::size_t n) {
    std::string s;
    for (std::size_t i = 0; i < n; ++i) s += (mask >> i) & 1U ? '1' : '0';
    return s.empty() ? "0" : s;
}

FiniteLattice boolean_lattice(std::size_t n) {
    if (n > 16) throw SizeLimitExceeded("Boolean lattice B" + std::to_string(n), 16);
    const std::uint32_t total = 1U << n;
    std::vector<std::string> labels;
    for (std::uint32_t m = 0; m < total; ++m) labels.push_back(subset_label(m, n));
    auto p = FinitePoset::from_predicate(std::move(labels),
                                         [](Id x, Id y) { return (x & ~y) == 0; });
    return FiniteLattice::from_poset(std::move(p), "B" + std::to_string(n));
}

FiniteLattice chain(std::size_t n) {
    if (n == 0) throw FormatError("a chain needs at least one element");
    std::vector<std::string> labels;
    std::vector<std::pair<Id, Id>> covers;
    for (Id i = 0; i < n; ++i) {
        labels.push_back(std::to_string(i));
        if (i > 0) covers.emplace_back(i - 1, i);
    }
    return build_lattice(std::move(labels), covers, "C" + std::to_string(n));
}

}  // namespace

FiniteLattice named_family(const std::string& name, std::size_t n) {
    if (name == "Bn" || name == "B") return boolean_lattice(n);
    if (name == "Cn" || name == "C") return chain(n);
    if (name == "M3") {
        return build_lattice({"0", "a", "b", "c", "1"},
                             {{0, 1}, {0, 2}, {0, 3}, {1, 4}, {2, 4}, {3, 4}}, "M3");
    }
    if (name == "N5") {
        return build_lattice({"0", "a", "b", "c", "1"},
                             {{0, 3}, {3, 1}, {1, 4}, {0, 2}, {2, 4}}, "N5");
    }
    if (name == "W7") {
        return build_lattice({"0", "u", "v", "m", "x", "y", "1"},
                             {{0, 1}, {0, 2}, {1, 3}, {2, 3}, {3, 4}, {3, 5}, {4, 6}, {5, 6}},
                             "W7");
    }
    throw UnknownFamily(name);
}

FiniteLattice named_family_from_string(const std::string& text) {
    if (text == "M3" || text == "N5" || text == "W7") return named_family(text);
    if (text.size() >= 2 && (text[0] == 'B' || text[0] == 'C') &&
        std::all_of(text.begin() + 1, text.end(), [](char c) { return std::isdigit(c); })) {
        return named_family(std::string(1, text[0]) + "n", std::stoul(text.substr(1)));
    }
    throw UnknownFamily(text);
}

std::vector<FiniteLattice> lattice_catalog(std::size_t max_size) {
    std::vector<FiniteLattice> out;
    if (max_size >= 1) {
        auto l = FiniteLattice::from_poset(FinitePoset::from_covers({"0"}, {}), "L1_0");
        out.push_back(std::move(l));
    }
    for (std::size_t n = 2; n <= max_size; ++n) {
        // Bounded lattices of size n: add 0 and 1 to every naturally labelled poset on n-2 points.
        const std::size_t m = n - 2;
        std::vector<std::pair<std::size_t, std::size_t>> slots;
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = i + 1; j < m; ++j) slots.emplace_back(i, j);
        }
        if (slots.size() > 24) throw SizeLimitExceeded("lattice catalog size", 8);
        std::map<std::vector<std::size_t>, std::vector<std::size_t>> buckets;
        std::size_t index = 0;
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << slots.size()); ++mask) {
            std::vector<std::vector<bool>> rel(m, std::vector<bool>(m, false));
            for (std::size_t s = 0; s < slots.size(); ++s) {
                if ((mask >> s) & 1U) rel[slots[s].first][slots[s].second] = true;
            }
            bool transitive = true;
            for (std::size_t i = 0; i < m && transitive; ++i) {
                for (std::size_t j = i + 1; j < m && transitive; ++j) {
                    if (!rel[i][j]) continue;
                    for (std::size_t k = j + 1; k < m; ++k) {
                        if (rel[j][k] && !rel[i][k]) {
                            transitive = false;
                            break;
                        }
                    }
                }
            }
            if (!transitive) continue;
            std::vector<std::string> labels{"0"};
            for (std::size_t i = 0; i < m; ++i) labels.push_back("e" + std::to_string(i + 1));
            labels.push_back("1");
            auto p = FinitePoset::from_predicate(std::move(labels), [&](Id x, Id y) {
                if (x == y || x == 0 || y == n - 1) return true;
                if (y == 0 || x == n - 1) return false;
                return x < y && rel[x - 1][y - 1];
            });
            if (!is_lattice(p).lattice) continue;
            auto l = FiniteLattice::from_poset(std::move(p));
            auto key = iso_invariant(l);
            auto& bucket = buckets[key];
            bool seen = false;
            for (std::size_t idx : bucket) {
                if (isomorphic(out[idx], l)) {
                    seen = true;
                    break;
                }
            }
            if (seen) continue;
            l.set_name("L" + std::to_string(n) + "_" + std::to_string(index++));
            bucket.push_back(out.size());
            out.push_back(std::move(l));
        }
    }
    return out;
}

FiniteLattice random_lattice(std::size_t size, Rng& rng, std::size_t ground) {
    if (size == 0) throw FormatError("random lattice size must be positive");
    if (ground == 0) ground = std::max<std::size_t>(1, size - 1);
    if (ground > 20) throw SizeLimitExceeded("random lattice ground set", 20);
    const std::uint32_t full = (1U << ground) - 1U;
    for (int restart = 0; restart < 1000; ++restart) {
        std::set<std::uint32_t> family{full};
        for (int attempt = 0; attempt < 200 && family.size() < size; ++attempt) {
            const auto s = static_cast<std::uint32_t>(draw(rng, std::uint64_t{full} + 1));
            if (family.count(s)) continue;
            auto next = family;
            next.insert(s);
            for (std::uint32_t f : family) next.insert(f & s);
            if (next.size() <= size) family = std::move(next);
        }
        if (family.size() != size) continue;
        std::vector<std::uint32_t> sets(family.begin(), family.end());
        std::stable_sort(sets.begin(), sets.end(), [](std::uint32_t a, std::uint32_t b) {
            return __builtin_popcount(a) < __builtin_popcount(b);
        });
        std::vector<std::string> labels;
        for (auto s : sets) labels.push_back(subset_label(s, ground));
        auto p = FinitePoset::from_predicate(
            std::move(labels), [&](Id x, Id y) { return (sets[x] & ~sets[y]) == 0; });
        return FiniteLattice::from_poset(std::move(p), "R" + std::to_string(size));
    }
    throw SizeLimitExceeded("random lattice generation attempts", 1000);
}

}  // namespace latkit
