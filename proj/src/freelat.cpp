#include "latkit/freelat.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <tuple>
#include <unordered_map>

namespace latkit {

bool FreeTerm::operator==(const FreeTerm& o) const {
    return kind == o.kind && gen == o.gen && children == o.children;
}

std::size_t term_depth(const FreeTerm& t) {
    std::size_t d = 0;
    for (const auto& c : t.children) d = std::max(d, term_depth(c) + 1);
    return d;
}

bool term_less(const FreeTerm& a, const FreeTerm& b) {
    const auto da = term_depth(a), db = term_depth(b);
    if (da != db) return da < db;
    if (a.kind != b.kind) return a.kind < b.kind;
    if (a.kind == FreeTerm::Kind::gen) return a.gen < b.gen;
    return std::lexicographical_compare(a.children.begin(), a.children.end(), b.children.begin(),
                                        b.children.end(), term_less);
}

namespace {

class Parser {
  public:
    Parser(const std::string& s, std::size_t n) : s_(s), n_(n) {}

    FreeTerm parse() {
        auto t = expr();
        skip();
        if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        return t;
    }

  private:
    [[noreturn]] void fail(const std::string& why) const {
        throw MalformedTerm(why + " at position " + std::to_string(pos_) + " in \"" + s_ + "\"");
    }

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    FreeTerm expr() {
        std::vector<FreeTerm> parts{product()};
        while (accept('+')) parts.push_back(product());
        return parts.size() == 1 ? std::move(parts.front()) : FreeTerm::join_of(std::move(parts));
    }

    FreeTerm product() {
        std::vector<FreeTerm> parts{atom()};
        while (accept('*')) parts.push_back(atom());
        return parts.size() == 1 ? std::move(parts.front()) : FreeTerm::meet_of(std::move(parts));
    }

    FreeTerm atom() {
        if (accept('(')) {
            auto t = expr();
            if (!accept(')')) fail("expected ')'");
            return t;
        }
        skip();
        if (pos_ >= s_.size()) fail("unexpected end of term");
        const char c = s_[pos_];
        if (c == 'x' && pos_ + 1 < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_ + 1]))) {
            std::size_t end = pos_ + 1;
            while (end < s_.size() && std::isdigit(static_cast<unsigned char>(s_[end]))) ++end;
            const auto idx = std::stoul(s_.substr(pos_ + 1, end - pos_ - 1));
            if (idx >= n_) fail("generator x" + std::to_string(idx) + " out of range");
            pos_ = end;
            return FreeTerm::generator(static_cast<Id>(idx));
        }
        if (n_ == 3 && (c == 'x' || c == 'y' || c == 'z')) {
            ++pos_;
            return FreeTerm::generator(static_cast<Id>(c - 'x'));
        }
        fail("expected a generator or '('");
    }

    const std::string& s_;
    std::size_t n_;
    std::size_t pos_ = 0;
};

}  // namespace

FreeTerm parse_term(const std::string& text, std::size_t n) { return Parser(text, n).parse(); }

std::string to_string(const FreeTerm& t, std::size_t n) {
    switch (t.kind) {
        case FreeTerm::Kind::gen:
            return n == 3 ? std::string(1, static_cast<char>('x' + t.gen)) : "x" + std::to_string(t.gen);
        case FreeTerm::Kind::join: {
            std::string out;
            for (const auto& c : t.children) {
                if (!out.empty()) out += "+";
                out += c.kind == FreeTerm::Kind::join ? "(" + to_string(c, n) + ")" : to_string(c, n);
            }
            return out;
        }
        case FreeTerm::Kind::meet: {
            std::string out;
            for (const auto& c : t.children) {
                if (!out.empty()) out += "*";
                out += c.kind == FreeTerm::Kind::gen ? to_string(c, n) : "(" + to_string(c, n) + ")";
            }
            return out;
        }
    }
    return {};
}

void validate_term(const FreeTerm& t, std::size_t n) {
    if (t.kind == FreeTerm::Kind::gen) {
        if (t.gen >= n) throw MalformedTerm("generator index out of range");
        if (!t.children.empty()) throw MalformedTerm("generator with children");
        return;
    }
    if (t.children.size() < 2) throw MalformedTerm("join or meet with fewer than two children");
    for (const auto& c : t.children) validate_term(c, n);
}

namespace {

// Hash-consed view of the terms in one whitman_leq computation.
class Interner {
  public:
    struct Node {
        FreeTerm::Kind kind;
        Id gen;
        std::vector<Id> children;
    };

    Id intern(const FreeTerm& t) {
        std::vector<Id> ch;
        ch.reserve(t.children.size());
        for (const auto& c : t.children) ch.push_back(intern(c));
        auto key = std::make_tuple(static_cast<int>(t.kind), t.gen, ch);
        auto it = ids_.find(key);
        if (it != ids_.end()) return it->second;
        const Id id = static_cast<Id>(nodes_.size());
        nodes_.push_back({t.kind, t.gen, std::move(ch)});
        ids_.emplace(std::move(key), id);
        return id;
    }

    bool leq(Id s, Id t) {
        if (s == t) return true;
        const std::uint64_t key = (std::uint64_t{s} << 32) | t;
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
        const bool r = decide(s, t);
        memo_.emplace(key, r);
        return r;
    }

  private:
    bool decide(Id s, Id t) {
        const auto& ns = nodes_[s];
        const auto& nt = nodes_[t];
        using K = FreeTerm::Kind;
        if (ns.kind == K::join) {
            return std::all_of(ns.children.begin(), ns.children.end(), [&](Id c) { return leq(c, t); });
        }
        if (nt.kind == K::meet) {
            return std::all_of(nt.children.begin(), nt.children.end(), [&](Id c) { return leq(s, c); });
        }
        if (ns.kind == K::gen && nt.kind == K::gen) return ns.gen == nt.gen;
        if (ns.kind == K::meet &&
            std::any_of(ns.children.begin(), ns.children.end(), [&](Id c) { return leq(c, t); })) {
            return true;
        }
        return nt.kind == K::join &&
               std::any_of(nt.children.begin(), nt.children.end(), [&](Id c) { return leq(s, c); });
    }

    std::vector<Node> nodes_;
    std::map<std::tuple<int, Id, std::vector<Id>>, Id> ids_;
    std::unordered_map<std::uint64_t, bool> memo_;
};

}  // namespace

bool whitman_leq(const FreeTerm& s, const FreeTerm& t) {
    Interner in;
    const Id a = in.intern(s);
    const Id b = in.intern(t);
    return in.leq(a, b);
}

namespace {

void splice(std::vector<FreeTerm>& out, FreeTerm t, FreeTerm::Kind kind) {
    if (t.kind == kind) {
        for (auto& c : t.children) out.push_back(std::move(c));
    } else {
        out.push_back(std::move(t));
    }
}

FreeTerm canonical_rec(const FreeTerm& t) {
    if (t.kind == FreeTerm::Kind::gen) return t;
    const auto kind = t.kind;
    const auto other = kind == FreeTerm::Kind::join ? FreeTerm::Kind::meet : FreeTerm::Kind::join;
    // below(u, v): u is absorbed by v in a node of this kind.
    auto below = [&](const FreeTerm& u, const FreeTerm& v) {
        return kind == FreeTerm::Kind::join ? whitman_leq(u, v) : whitman_leq(v, u);
    };
    std::vector<FreeTerm> ch;
    for (const auto& c : t.children) splice(ch, canonical_rec(c), kind);
    while (true) {
        std::vector<FreeTerm> kept;
        for (std::size_t i = 0; i < ch.size(); ++i) {
            bool redundant = false;
            for (std::size_t j = 0; j < ch.size() && !redundant; ++j) {
                if (i == j || !below(ch[i], ch[j])) continue;
                // Mutually absorbed children are equal after canonicalisation; keep the first.
                redundant = !below(ch[j], ch[i]) || j < i;
            }
            if (!redundant) kept.push_back(ch[i]);
        }
        ch = std::move(kept);
        if (ch.size() == 1) return ch.front();
        const FreeTerm whole{kind, 0, ch};
        bool changed = false;
        for (std::size_t i = 0; i < ch.size() && !changed; ++i) {
            if (ch[i].kind != other) continue;
            for (const auto& part : ch[i].children) {
                if (below(part, whole)) {
                    FreeTerm repl = part;
                    ch.erase(ch.begin() + static_cast<std::ptrdiff_t>(i));
                    splice(ch, std::move(repl), kind);
                    changed = true;
                    break;
                }
            }
        }
        if (!changed) break;
    }
    std::sort(ch.begin(), ch.end(), term_less);
    return {kind, 0, std::move(ch)};
}

}  // namespace

FreeTerm canonical_term(const FreeTerm& t, std::size_t n) {
    validate_term(t, n);
    return canonical_rec(t);
}

FreeFragment free_lattice_fragment(std::size_t n, std::size_t depth, const Limits& lim) {
    if (n == 0) throw FormatError("free lattice needs at least one generator");
    FreeFragment f;
    f.n = n;
    f.depth = depth;
    std::map<std::string, FreeTerm> level;
    for (Id i = 0; i < n; ++i) level.emplace(to_string(FreeTerm::generator(i), n), FreeTerm::generator(i));
    for (std::size_t d = 0; d < depth; ++d) {
        std::vector<FreeTerm> cur;
        for (const auto& [k, v] : level) cur.push_back(v);
        if (cur.size() >= 63 || (std::uint64_t{1} << cur.size()) > lim.max_elements) {
            throw SizeLimitExceeded("free lattice fragment subsets at depth " + std::to_string(d + 1),
                                    lim.max_elements);
        }
        auto next = level;
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << cur.size()); ++mask) {
            if (__builtin_popcountll(mask) < 2) continue;
            std::vector<FreeTerm> parts;
            for (std::size_t i = 0; i < cur.size(); ++i) {
                if (mask >> i & 1) parts.push_back(cur[i]);
            }
            for (auto t : {FreeTerm::join_of(parts), FreeTerm::meet_of(parts)}) {
                auto c = canonical_rec(t);
                next.emplace(to_string(c, n), std::move(c));
            }
        }
        const bool same = next.size() == level.size();
        level = std::move(next);
        if (same) break;
    }
    for (auto& [k, v] : level) f.terms.push_back(std::move(v));
    std::sort(f.terms.begin(), f.terms.end(), term_less);

    std::set<std::string> names;
    std::vector<std::string> labels;
    for (const auto& t : f.terms) {
        labels.push_back(to_string(t, n));
        names.insert(labels.back());
    }
    f.closed = true;
    for (std::size_t i = 0; i < f.terms.size() && f.closed; ++i) {
        for (std::size_t j = i + 1; j < f.terms.size(); ++j) {
            if (!names.count(to_string(canonical_rec(FreeTerm::join_of({f.terms[i], f.terms[j]})), n)) ||
                !names.count(to_string(canonical_rec(FreeTerm::meet_of({f.terms[i], f.terms[j]})), n))) {
                f.closed = false;
                break;
            }
        }
    }
    f.order = FinitePoset::from_predicate(std::move(labels),
                                          [&](Id i, Id j) { return whitman_leq(f.terms[i], f.terms[j]); });
    return f;
}

Id evaluate_term(const FreeTerm& t, const FiniteLattice& l, const std::vector<Id>& assignment) {
    switch (t.kind) {
        case FreeTerm::Kind::gen:
            if (t.gen >= assignment.size()) throw MalformedTerm("generator without an assigned value");
            return assignment[t.gen];
        case FreeTerm::Kind::join: {
            Id acc = l.zero();
            for (const auto& c : t.children) acc = l.join(acc, evaluate_term(c, l, assignment));
            return acc;
        }
        case FreeTerm::Kind::meet: {
            Id acc = l.one();
            for (const auto& c : t.children) acc = l.meet(acc, evaluate_term(c, l, assignment));
            return acc;
        }
    }
    return l.zero();
}

std::string to_string(const SymbolicTensor& s, const FiniteLattice& a, std::size_t n) {
    std::string out;
    for (const auto& [x, t] : s.caps) {
        if (!out.empty()) out += " + ";
        out += "<" + a.label(x) + "," + to_string(t, n) + ">";
    }
    return out;
}

std::pair<SymbolicTensor, SymbolicTensor> m3_f3_objects(const FiniteLattice& m3) {
    const Id a = m3.find_label("a"), b = m3.find_label("b"), c = m3.find_label("c");
    SymbolicTensor alpha{{{a, FreeTerm::generator(0)}, {b, FreeTerm::generator(1)}, {c, FreeTerm::generator(2)}}};
    SymbolicTensor beta{{{a, FreeTerm::join_of({FreeTerm::generator(0), FreeTerm::generator(1),
                                                FreeTerm::generator(2)})}}};
    return {alpha, beta};
}

BiIdeal evaluate_symbolic(const SymbolicTensor& s, const PairGrid& g, const std::vector<Id>& assignment) {
    Bits u = g.bottom();
    for (const auto& [x, t] : s.caps) u |= pure_tensor(g, x, evaluate_term(t, g.b(), assignment)).members;
    return bi_ideal_closure(g, u);
}

}  // namespace latkit
