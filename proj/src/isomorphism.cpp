#include "latkit/isomorphism.hpp"

#include <algorithm>
#include <array>

namespace latkit {

namespace {

using Fingerprint = std::array<std::size_t, 5>;

Fingerprint fingerprint(const FiniteLattice& l, Id x) {
    const auto& p = l.poset();
    return {p.height(x), p.lower_covers(x).size(), p.upper_covers(x).size(), p.down(x).count(),
            p.up(x).count()};
}

class Search {
  public:
    Search(const FiniteLattice& a, const FiniteLattice& b) : a_(a), b_(b) {
        ja_ = join_irreducible_ids(a);
        jb_ = join_irreducible_ids(b);
        for (Id x = 0; x < a.size(); ++x) fa_.push_back(fingerprint(a, x));
        for (Id x = 0; x < b.size(); ++x) fb_.push_back(fingerprint(b, x));
    }

    std::optional<std::vector<Id>> run() {
        if (a_.size() != b_.size() || ja_.size() != jb_.size()) return std::nullopt;
        auto sa = fa_, sb = fb_;
        std::sort(sa.begin(), sa.end());
        std::sort(sb.begin(), sb.end());
        if (sa != sb) return std::nullopt;
        image_.assign(ja_.size(), 0);
        used_.assign(b_.size(), false);
        if (assign(0)) return full_map_;
        return std::nullopt;
    }

  private:
    bool consistent(std::size_t i, Id k) const {
        const Id j = ja_[i];
        for (std::size_t p = 0; p < i; ++p) {
            const Id jp = ja_[p], kp = image_[p];
            if (a_.leq(jp, j) != b_.leq(kp, k) || a_.leq(j, jp) != b_.leq(k, kp)) return false;
            const Id ja = a_.join(jp, j), kb = b_.join(kp, k);
            if (fa_[ja] != fb_[kb]) return false;
            for (std::size_t q = 0; q < p; ++q) {
                const Id jq = ja_[q], kq = image_[q];
                if (a_.leq(j, a_.join(jp, jq)) != b_.leq(k, b_.join(kp, kq))) return false;
                if (a_.leq(jq, ja) != b_.leq(kq, kb)) return false;
            }
        }
        return true;
    }

    bool assign(std::size_t i) {
        if (i == ja_.size()) return extend();
        for (Id k : jb_) {
            if (used_[k] || fa_[ja_[i]] != fb_[k] || !consistent(i, k)) continue;
            used_[k] = true;
            image_[i] = k;
            if (assign(i + 1)) return true;
            used_[k] = false;
        }
        return false;
    }

    bool extend() {
        const std::size_t n = a_.size();
        full_map_.assign(n, b_.zero());
        std::vector<bool> hit(n, false);
        for (Id x = 0; x < n; ++x) {
            Id y = b_.zero();
            for (std::size_t i = 0; i < ja_.size(); ++i) {
                if (a_.leq(ja_[i], x)) y = b_.join(y, image_[i]);
            }
            if (hit[y]) return false;
            hit[y] = true;
            full_map_[x] = y;
        }
        for (Id x = 0; x < n; ++x) {
            for (Id y = 0; y < n; ++y) {
                if (a_.leq(x, y) != b_.leq(full_map_[x], full_map_[y])) return false;
            }
        }
        return true;
    }

    const FiniteLattice& a_;
    const FiniteLattice& b_;
    std::vector<Id> ja_, jb_;
    std::vector<Fingerprint> fa_, fb_;
    std::vector<Id> image_;
    std::vector<bool> used_;
    std::vector<Id> full_map_;
};

}  // namespace

std::optional<std::vector<Id>> find_isomorphism(const FiniteLattice& a, const FiniteLattice& b) {
    return Search(a, b).run();
}

std::vector<std::size_t> iso_invariant(const FiniteLattice& l) {
    std::vector<Fingerprint> fs;
    for (Id x = 0; x < l.size(); ++x) fs.push_back(fingerprint(l, x));
    std::sort(fs.begin(), fs.end());
    std::vector<std::size_t> out{l.size()};
    for (const auto& f : fs) out.insert(out.end(), f.begin(), f.end());
    return out;
}

}  // namespace latkit
