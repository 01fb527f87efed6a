#include "latkit/verify.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <functional>
#include <thread>

#include "latkit/boxprod.hpp"
#include "latkit/catalog.hpp"
#include "latkit/congruence.hpp"
#include "latkit/tensor.hpp"

namespace latkit {

const std::vector<std::string>& theorem_ids() {
    static const std::vector<std::string> ids{"glq-iso",  "ltp-iso",  "box-closure", "m3n5-ltp", "dual-ltp",
                                              "capped-subtensor", "eps-hom", "diag-cpe", "perm-pres"};
    return ids;
}

namespace {

struct Task {
    std::string key;
    std::vector<FiniteLattice> inputs;
    /// Returns a record with a boolean "verdict".
    std::function<json()> run;
};

struct Instances {
    std::vector<FiniteLattice> singles;
    std::vector<std::string> single_keys;
    std::vector<std::pair<FiniteLattice, FiniteLattice>> pairs;
    std::vector<std::string> pair_keys;
};

std::string sample_key(std::size_t i) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "random#%03zu", i);
    return buf;
}

Instances build_instances(const VerifyConfig& cfg, bool ordered_pairs) {
    Instances in;
    const auto cat = lattice_catalog(cfg.max_size);
    for (const auto& l : cat) {
        in.singles.push_back(l);
        in.single_keys.push_back(l.name());
    }
    for (std::size_t i = 0; i < cat.size(); ++i) {
        for (std::size_t j = ordered_pairs ? 0 : i; j < cat.size(); ++j) {
            in.pairs.emplace_back(cat[i], cat[j]);
            in.pair_keys.push_back(cat[i].name() + "|" + cat[j].name());
        }
    }
    Rng rng(cfg.seed);
    const std::size_t bound = cfg.max_size + 2;
    auto size = [&]() { return static_cast<std::size_t>(2 + draw(rng, bound - 1)); };
    for (std::size_t s = 0; s < cfg.samples; ++s) {
        auto a = random_lattice(size(), rng);
        auto b = random_lattice(size(), rng);
        in.singles.push_back(a);
        in.single_keys.push_back(sample_key(s) + ":" + a.name());
        in.pair_keys.push_back(sample_key(s) + ":" + a.name() + "|" + b.name());
        in.pairs.emplace_back(std::move(a), std::move(b));
    }
    return in;
}

template <typename F>
std::vector<Task> over_pairs(const Instances& in, F f) {
    std::vector<Task> tasks;
    for (std::size_t i = 0; i < in.pairs.size(); ++i) {
        const auto& [a, b] = in.pairs[i];
        tasks.push_back({in.pair_keys[i], {a, b}, [a, b, f]() { return f(a, b); }});
    }
    return tasks;
}

template <typename F>
std::vector<Task> over_singles(const Instances& in, F f) {
    std::vector<Task> tasks;
    for (std::size_t i = 0; i < in.singles.size(); ++i) {
        const auto& l = in.singles[i];
        tasks.push_back({in.single_keys[i], {l}, [l, f]() { return f(l); }});
    }
    return tasks;
}

// Every A⊡B element with m box terms and n circ terms, m ≥ 1 and m + n ≤ max_terms, terms taken as
// nondecreasing index tuples.
json box_closure_instance(const FiniteLattice& a, const FiniteLattice& b, const Limits& lim,
                          std::size_t max_terms, std::size_t sampled, std::uint64_t seed) {
    const auto box = box_product(a, b, lim);
    const auto& g = box.grid();
    const std::size_t k = g.size();
    std::size_t checked = 0;
    std::string failure;
    auto check = [&](const std::vector<std::size_t>& bt, const std::vector<std::size_t>& ct) {
        std::vector<std::pair<Id, Id>> bx, cx;
        for (auto i : bt) bx.emplace_back(g.first(i), g.second(i));
        for (auto i : ct) cx.emplace_back(g.first(i), g.second(i));
        const auto h = boxdot_element(g, bx, cx);
        const auto closed = box_closure(g, h);
        const auto least = least_containing(box, h.extent);
        ++checked;
        if (!least || box.element(*least) != closed.extent) {
            if (failure.empty()) failure = "closure formula differs from the least containing element";
            return false;
        }
        return true;
    };
    if (sampled == 0) {
        std::vector<std::size_t> bt, ct;
        std::function<bool(std::size_t, std::size_t, std::size_t, bool)> rec =
            [&](std::size_t m, std::size_t n, std::size_t start, bool in_circ) -> bool {
            if (!in_circ && bt.size() == m) return rec(m, n, 0, true);
            if (in_circ && ct.size() == n) return check(bt, ct);
            auto& v = in_circ ? ct : bt;
            for (std::size_t i = start; i < k; ++i) {
                v.push_back(i);
                const bool ok = rec(m, n, i, in_circ);
                v.pop_back();
                if (!ok) return false;
            }
            return true;
        };
        for (std::size_t m = 1; m <= max_terms && failure.empty(); ++m) {
            for (std::size_t n = 0; m + n <= max_terms && failure.empty(); ++n) rec(m, n, 0, false);
        }
    } else {
        Rng rng(seed);
        for (std::size_t s = 0; s < sampled && failure.empty(); ++s) {
            const std::size_t m = 1 + draw(rng, max_terms);
            const std::size_t n = draw(rng, max_terms - m + 1);
            std::vector<std::size_t> bt(m), ct(n);
            for (auto& x : bt) x = draw(rng, k);
            for (auto& x : ct) x = draw(rng, k);
            check(bt, ct);
        }
    }
    json r{{"verdict", failure.empty()}, {"checked", checked}, {"box_size", box.size()}};
    if (!failure.empty()) r["failure"] = failure;
    return r;
}

std::vector<Task> build_tasks(const std::string& id, const VerifyConfig& cfg) {
    const Limits lim = cfg.limits;
    if (id == "glq-iso") {
        GlqOptions opt;
        opt.limits = lim;
        opt.seed = cfg.seed;
        return over_pairs(build_instances(cfg, false), [opt](const FiniteLattice& a, const FiniteLattice& b) {
            const auto r = glq_isomorphism_check(a, b, opt);
            json j{{"verdict", r.verdict}, {"tensor_size", r.tensor_size}, {"con_sizes", {r.con_a, r.con_b}},
                   {"ji_targets", r.ji_targets}, {"full_route", r.full_route}};
            if (!r.verdict) j["failure"] = r.failure;
            return j;
        });
    }
    if (id == "ltp-iso") {
        MuOptions opt;
        opt.limits = lim;
        opt.seed = cfg.seed;
        return over_pairs(build_instances(cfg, false), [opt](const FiniteLattice& a, const FiniteLattice& b) {
            const auto r = mu_iso(a, b, opt);
            const bool ok = r.verdict && r.formula_ii_iso && r.formula_iii_consistent;
            json j{{"verdict", ok},
                   {"ltp_size", r.ltp_size},
                   {"formula_checks", r.formula_checks},
                   {"formula_ii_iso", r.formula_ii_iso},
                   {"formula_ii_agrees", r.formula_ii_agrees},
                   {"formula_iii_consistent", r.formula_iii_consistent}};
            if (!r.verdict) j["failure"] = r.failure;
            return j;
        });
    }
    if (id == "box-closure") {
        const auto in = build_instances(cfg, true);
        std::vector<Task> tasks;
        for (std::size_t i = 0; i < in.pairs.size(); ++i) {
            const auto& [a, b] = in.pairs[i];
            // Catalog pairs are exhaustive; random pairs get seeded samples.
            const std::size_t sampled = in.pair_keys[i].rfind("random#", 0) == 0 ? 50 : 0;
            tasks.push_back({in.pair_keys[i], {a, b}, [a, b, lim, sampled, seed = cfg.seed + i]() {
                                 return box_closure_instance(a, b, lim, 3, sampled, seed);
                             }});
        }
        return tasks;
    }
    if (id == "m3n5-ltp") {
        auto in = build_instances(cfg, false);
        std::vector<Task> tasks;
        for (const std::string which : {"m3", "n5"}) {
            auto part = over_singles(in, [lim, which](const FiniteLattice& l) {
                const auto r = triple_iso_check(l, which, lim);
                json j{{"verdict", r.verdict}};
                if (!r.verdict) j["failure"] = r.failure;
                return j;
            });
            for (auto& t : part) {
                t.key = which + ":" + t.key;
                tasks.push_back(std::move(t));
            }
        }
        return tasks;
    }
    if (id == "dual-ltp" || id == "capped-subtensor") {
        const bool dual_part = id == "dual-ltp";
        return over_pairs(build_instances(cfg, false), [lim, dual_part](const FiniteLattice& a, const FiniteLattice& b) {
            const auto r = ltp_theorems(a, b, lim);
            if (dual_part) return json{{"verdict", r.dual_iso && r.dual_map}, {"dual_iso", r.dual_iso}, {"dual_map", r.dual_map}};
            json j{{"verdict", r.capped_subtensor && r.distributive_equality.value_or(true)},
                   {"capped_subtensor", r.capped_subtensor}};
            if (r.distributive_equality) j["distributive_equality"] = *r.distributive_equality;
            if (!r.detail.empty()) j["failure"] = r.detail;
            return j;
        });
    }
    if (id == "eps-hom") {
        return over_pairs(build_instances(cfg, true), [lim](const FiniteLattice& a, const FiniteLattice& b) {
            const auto r = hom_tensor(a, b, lim);
            json j{{"verdict", r.iso_check}, {"homs", r.homs.size()}};
            if (!r.iso_check) j["failure"] = r.failure;
            return j;
        });
    }
    if (id == "diag-cpe") {
        auto in = build_instances(cfg, false);
        auto tasks = over_singles(in, [lim](const FiniteLattice& l) {
            const auto r = embedding_check(l, l, EmbeddingKind::diagonal, std::nullopt, lim);
            json j{{"verdict", r.verdict.verdict}, {"target_size", r.target.size()}};
            if (!r.verdict.verdict) j["failure"] = r.verdict.detail;
            return j;
        });
        const auto m3 = named_family("M3");
        for (std::size_t i = 0; i < in.singles.size(); ++i) {
            const auto l = in.singles[i];
            tasks.push_back({"j:M3|" + in.single_keys[i], {m3, l}, [m3, l, lim]() {
                                 const auto r = embedding_check(m3, l, EmbeddingKind::j, std::nullopt, lim);
                                 return json{{"verdict", r.verdict.verdict}, {"target_size", r.target.size()}};
                             }});
            for (Id s = 0; s < m3.size(); ++s) {
                if (s == m3.zero()) continue;
                tasks.push_back({"j_s:M3:" + m3.label(s) + "|" + in.single_keys[i], {m3, l}, [m3, l, s, lim]() {
                                     const auto r = embedding_check(m3, l, EmbeddingKind::j_s, s, lim);
                                     return json{{"verdict", r.verdict.verdict}, {"target_size", r.target.size()}};
                                 }});
            }
        }
        return tasks;
    }
    if (id == "perm-pres") {
        return over_pairs(build_instances(cfg, false), [lim](const FiniteLattice& a, const FiniteLattice& b) {
            if (!permutable(a, lim).permutable || !permutable(b, lim).permutable) {
                return json{{"verdict", true}, {"vacuous", true}};
            }
            const auto t = lattice_tensor_product(a, b, lim);
            const auto p = permutable(t.set.lattice(), lim);
            return json{{"verdict", p.permutable}, {"vacuous", false}, {"ltp_size", t.set.size()}};
        });
    }
    throw FormatError("unknown theorem id: " + id);
}

}  // namespace

VerifyReport run_verify(const std::string& theorem_id, const VerifyConfig& cfg) {
    auto tasks = build_tasks(theorem_id, cfg);
    std::vector<json> records(tasks.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (std::size_t i = next++; i < tasks.size(); i = next++) {
            const auto start = std::chrono::steady_clock::now();
            json r;
            try {
                r = tasks[i].run();
            } catch (const SizeLimitExceeded& e) {
                r = {{"skipped", true}, {"reason", e.what()}};
            } catch (const std::exception& e) {
                r = {{"verdict", false}, {"failure", std::string("exception: ") + e.what()}};
            }
            if (cfg.timings) {
                r["ms"] = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
            }
            records[i] = std::move(r);
        }
    };
    unsigned n = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
    n = static_cast<unsigned>(std::min<std::size_t>(n, std::max<std::size_t>(1, tasks.size())));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < n; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    std::vector<std::size_t> order(tasks.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return tasks[x].key < tasks[y].key; });

    VerifyReport rep;
    json failing = json::array();
    for (auto i : order) {
        json line{{"theorem", theorem_id}, {"instance", tasks[i].key}};
        line.update(records[i]);
        if (records[i].value("skipped", false)) {
            ++rep.skipped;
        } else if (records[i].value("verdict", false)) {
            ++rep.passed;
        } else {
            ++rep.failed;
            json inputs = json::array();
            for (const auto& l : tasks[i].inputs) inputs.push_back(to_json(l));
            line["inputs"] = inputs;
            failing.push_back({{"instance", tasks[i].key}, {"inputs", std::move(inputs)}});
        }
        rep.lines.push_back(std::move(line));
    }
    json agg{{"theorem", theorem_id},
             {"aggregate", true},
             {"instances", tasks.size()},
             {"passed", rep.passed},
             {"failed", rep.failed},
             {"skipped", rep.skipped},
             {"pass", rep.ok()},
             {"config", {{"max_size", cfg.max_size}, {"samples", cfg.samples}, {"seed", cfg.seed},
                         {"guard", cfg.limits.max_pairs}}}};
    if (!failing.empty()) agg["counterexamples"] = std::move(failing);
    rep.lines.push_back(std::move(agg));
    return rep;
}

}  // namespace latkit
