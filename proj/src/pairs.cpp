#include "latkit/pairs.hpp"

namespace latkit {

PairGrid::PairGrid(FiniteLattice a, FiniteLattice b) : a_(std::move(a)), b_(std::move(b)) {
    const std::size_t n = size();
    down_.assign(n, Bits(n));
    up_.assign(n, Bits(n));
    for (Id x = 0; x < a_.size(); ++x) {
        for (Id y = 0; y < b_.size(); ++y) {
            auto& d = down_[index(x, y)];
            for_each_bit(a_.poset().down(x), [&](Id u) {
                for_each_bit(b_.poset().down(y), [&](Id v) { d.set(index(u, v)); });
            });
            auto& up = up_[index(x, y)];
            for_each_bit(a_.poset().up(x), [&](Id u) {
                for_each_bit(b_.poset().up(y), [&](Id v) { up.set(index(u, v)); });
            });
        }
    }
    bottom_ = Bits(n);
    for (Id x = 0; x < a_.size(); ++x) bottom_.set(index(x, b_.zero()));
    for (Id y = 0; y < b_.size(); ++y) bottom_.set(index(a_.zero(), y));
}

Bits PairGrid::down_closure(const Bits& s) const {
    Bits out = s;
    for_each_bit(s, [&](Id i) { out |= down_[i]; });
    return out;
}

std::vector<std::pair<Id, Id>> PairGrid::maximal_pairs(const Bits& s) const {
    std::vector<std::pair<Id, Id>> out;
    Bits scratch(size());
    for_each_bit(s, [&](Id i) {
        scratch = up_[i];
        scratch &= s;
        if (scratch.count() == 1) out.emplace_back(first(i), second(i));
    });
    return out;
}

std::vector<std::pair<Id, Id>> PairGrid::pairs(const Bits& s) const {
    std::vector<std::pair<Id, Id>> out;
    for_each_bit(s, [&](Id i) { out.emplace_back(first(i), second(i)); });
    return out;
}

Bits PairGrid::from_pairs(const std::vector<std::pair<Id, Id>>& ps) const {
    Bits out(size());
    for (auto [x, y] : ps) {
        if (x >= a_.size() || y >= b_.size()) throw FormatError("pair outside the carrier");
        out.set(index(x, y));
    }
    return out;
}

Bits PairGrid::swapped(const Bits& s) const {
    Bits out(size());
    for_each_bit(s, [&](Id i) { out.set(second(i) * a_.size() + first(i)); });
    return out;
}

}  // namespace latkit
