#include "latkit/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "latkit/boxprod.hpp"
#include "latkit/catalog.hpp"
#include "latkit/congruence.hpp"
#include "latkit/isomorphism.hpp"
#include "latkit/json_io.hpp"
#include "latkit/tensor.hpp"
#include "latkit/transfer.hpp"
#include "latkit/verify.hpp"

namespace latkit {

namespace {

struct Settings {
    std::uint64_t seed = 1;
    std::size_t max_size = 5;
    std::size_t samples = 20;
    std::size_t guard = 0;  // 0: LATKIT_GUARD or the per-command default
    std::string output = "-";
    bool timings = false;
    unsigned threads = 0;
};

// Outcome of a command: the document to print and the exit code.
struct Result {
    std::string text;
    int code = 0;
};

class Commands {
  public:
    Commands(const Settings& s, std::istream& in) : s_(s), in_(in) {}

    Limits limits(std::size_t fallback) const {
        Limits lim;
        lim.max_pairs = fallback;
        if (const char* env = std::getenv("LATKIT_GUARD")) {
            try {
                lim.max_pairs = std::stoul(env);
            } catch (const std::exception&) {
                throw FormatError("LATKIT_GUARD must be a positive integer");
            }
        }
        if (s_.guard) lim.max_pairs = s_.guard;
        return lim;
    }

    FiniteLattice load(const std::string& path) const { return lattice_from_json(read_json(path, in_)); }
    FinitePoset load_poset(const std::string& path) const { return poset_from_json(read_json(path, in_)); }

    Result gen(const std::string& family, std::size_t n, std::size_t size) const {
        FiniteLattice l;
        if (family == "random") {
            if (size == 0) throw FormatError("gen random needs --size");
            Rng rng(s_.seed);
            l = random_lattice(size, rng);
        } else if (family == "Bn" || family == "Cn") {
            if (n == 0 && family == "Cn") throw FormatError("gen " + family + " needs --n");
            l = named_family(family, n);
        } else {
            l = named_family_from_string(family);
        }
        return {to_json(l).dump(2) + "\n", 0};
    }

    Result op(const std::string& name, const std::vector<std::string>& inputs, std::size_t n) const {
        auto need = [&](std::size_t k) {
            if (inputs.size() != k) {
                throw FormatError("op " + name + " takes " + std::to_string(k) + " input(s)");
            }
        };
        const auto start = std::chrono::steady_clock::now();
        const Limits lim = limits(name == "tensor" ? Limits{}.max_pairs : 400);
        json doc;
        std::vector<std::size_t> sizes;
        auto lat = [&](std::size_t i) {
            auto l = load(inputs[i]);
            sizes.push_back(l.size());
            return l;
        };
        if (name == "tensor") {
            need(2);
            const auto t = tensor_product(lat(0), lat(1), lim);
            doc = to_json(t.lattice());
        } else if (name == "box" || name == "ltp") {
            need(2);
            const auto a = lat(0), b = lat(1);
            SetLattice set = name == "box" ? box_product(a, b, lim) : lattice_tensor_product(a, b, lim).set;
            doc = to_json(set.lattice());
            json elems = json::array();
            for (const auto& e : set.elements()) elems.push_back(to_json(set.grid(), box_element(set.grid(), e)));
            doc["box_elements"] = std::move(elems);
        } else if (name == "mL" || name == "nL" || name == "balanced" || name == "m3bracket" ||
                   name == "n5bracket") {
            need(1);
            const auto t = triples(lat(0), parse_triple_kind(name));
            if (t.lattice) {
                doc = to_json(*t.lattice);
            } else {
                doc = to_json(t.order);
            }
            doc["lattice"] = t.lattice.has_value();
        } else if (name == "con") {
            need(1);
            const auto c = con_lattice(lat(0), lim);
            doc = to_json(c.lattice);
            json blocks = json::array();
            for (const auto& x : c.congruences) blocks.push_back(to_json(x));
            doc["congruences"] = std::move(blocks);
            doc["simple"] = c.simple;
        } else if (name == "dual") {
            need(1);
            doc = to_json(dual(lat(0)));
        } else if (name == "product") {
            need(2);
            doc = to_json(product(lat(0), lat(1)));
        } else if (name == "power") {
            need(1);
            doc = to_json(power(lat(0), n == 0 ? 2 : n));
        } else if (name == "ideals") {
            need(1);
            doc = to_json(ideal_lattice(JoinSemilattice::from_lattice(lat(0))));
        } else {
            throw FormatError("unknown op: " + name);
        }
        json meta{{"op", name}, {"input_sizes", sizes}, {"size", doc["elements"].size()}};
        if (s_.timings) {
            meta["ms"] = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        }
        doc["meta"] = std::move(meta);
        return {doc.dump(2) + "\n", 0};
    }

    Result check(const std::string& prop, const std::vector<std::string>& inputs, const std::string& kind,
                 const std::string& s_label) const {
        auto need = [&](std::size_t k) {
            if (inputs.size() != k) {
                throw FormatError("check " + prop + " takes " + std::to_string(k) + " input(s)");
            }
        };
        const Limits lim = limits(400);
        auto labels = [](const FinitePoset& p, const std::vector<Id>& ids) {
            json out = json::array();
            for (Id x : ids) out.push_back(p.label(x));
            return out;
        };
        json doc{{"property", prop}};
        bool verdict = false;
        if (prop == "amenable" || prop == "condition-t" || prop == "t-meet") {
            need(1);
            const auto l = load(inputs[0]);
            const auto s = prop == "t-meet" ? JoinSemilattice::meet_view(l) : JoinSemilattice::from_lattice(l);
            const auto t = condition_t(s);
            verdict = t.holds;
            if (t.holds) {
                doc["order"] = labels(l.poset(), t.order);
            } else {
                doc["witness"] = {{"cycle", t.cycle}, {"labels", labels(l.poset(), t.cycle)}};
            }
        } else if (prop == "classify" || prop == "sharply-transferable") {
            need(1);
            const auto c = classify(load(inputs[0]));
            verdict = c.sharply_transferable;
            doc["classification"] = {{"T_join", c.t_join},
                                     {"T_meet", c.t_meet},
                                     {"W", c.w},
                                     {"sharply_transferable", c.sharply_transferable},
                                     {"amenable", c.amenable}};
        } else if (prop == "whitman") {
            need(1);
            const auto l = load(inputs[0]);
            const auto w = whitman(l);
            verdict = w.holds;
            if (w.witness) {
                const std::vector<Id> q(w.witness->begin(), w.witness->end());
                doc["witness"] = {{"ids", q}, {"labels", labels(l.poset(), q)}};
            }
        } else if (prop == "distributive") {
            need(1);
            const auto l = load(inputs[0]);
            const auto d = is_distributive(l);
            verdict = d.distributive;
            if (d.witness) {
                const std::vector<Id> t(d.witness->begin(), d.witness->end());
                doc["witness"] = {{"ids", t}, {"labels", labels(l.poset(), t)}};
            }
        } else if (prop == "lattice") {
            need(1);
            const auto p = load_poset(inputs[0]);
            const auto v = is_lattice(p);
            verdict = v.lattice;
            if (v.witness) {
                const std::vector<Id> w{v.witness->first, v.witness->second};
                doc["witness"] = {{"ids", w}, {"labels", labels(p, w)}, {"reason", v.reason}};
            }
        } else if (prop == "spike") {
            need(1);
            const auto p = load_poset(inputs[0]);
            const auto r = spike_analysis(p);
            verdict = r.spike_free;
            json spikes = json::array();
            for (auto [a, b] : r.spikes) spikes.push_back({p.label(a), p.label(b)});
            doc["spikes"] = std::move(spikes);
        } else if (prop == "representable") {
            need(1);
            verdict = con_of_amenable_representable(load(inputs[0]));
        } else if (prop == "ji-con") {
            need(1);
            const auto r = ji_con_bijection(load(inputs[0]), lim);
            verdict = r.bijection;
            json m = json::array();
            for (auto [a, c] : r.map) m.push_back({a, c});
            doc["map"] = std::move(m);
        } else if (prop == "permutable") {
            need(1);
            const auto r = permutable(load(inputs[0]), lim);
            verdict = r.permutable;
            if (r.witness) doc["witness"] = {to_json(r.witness->first), to_json(r.witness->second)};
        } else if (prop == "simple") {
            need(1);
            verdict = con_lattice(load(inputs[0]), lim).simple;
        } else if (prop == "iso") {
            need(2);
            const auto m = find_isomorphism(load(inputs[0]), load(inputs[1]));
            verdict = m.has_value();
            doc["mapping"] = m ? json(*m) : json(nullptr);
        } else if (prop == "cong-preserving") {
            need(3);
            const auto l = load(inputs[0]);
            const auto k = load(inputs[1]);
            const auto mj = read_json(inputs[2], in_);
            if (!mj.is_array()) throw FormatError("embedding must be a JSON array");
            std::vector<Id> e;
            for (const auto& x : mj) e.push_back(x.is_string() ? k.find_label(x.get<std::string>()) : x.get<Id>());
            const auto r = cong_preserving_check(l, k, e, lim);
            verdict = r.verdict;
            if (!r.verdict) doc["detail"] = r.detail;
        } else if (prop == "embedding") {
            if (inputs.empty() || inputs.size() > 2) throw FormatError("check embedding takes L [S]");
            const auto l = load(inputs[0]);
            const auto which = parse_embedding_kind(kind.empty() ? "diagonal" : kind);
            const auto s = inputs.size() == 2 ? load(inputs[1]) : named_family("M3");
            std::optional<Id> se;
            if (which == EmbeddingKind::j_s) se = s.find_label(s_label);
            const auto r = embedding_check(s, l, which, se, lim);
            verdict = r.verdict.verdict;
            doc["map"] = r.map;
            doc["target_size"] = r.target.size();
            if (!verdict) doc["detail"] = r.verdict.detail;
        } else {
            throw FormatError("unknown property: " + prop);
        }
        doc["verdict"] = verdict;
        return {doc.dump(2) + "\n", verdict ? 0 : 1};
    }

    Result verify(const std::string& id) const {
        VerifyConfig cfg;
        cfg.max_size = s_.max_size;
        cfg.samples = s_.samples;
        cfg.seed = s_.seed;
        cfg.limits = limits(400);
        cfg.timings = s_.timings;
        cfg.threads = s_.threads;
        if (const char* env = std::getenv("LATKIT_THREADS")) cfg.threads = static_cast<unsigned>(std::atoi(env));
        const auto rep = run_verify(id, cfg);
        std::string text;
        for (const auto& line : rep.lines) text += line.dump() + "\n";
        return {text, rep.ok() ? 0 : 1};
    }

  private:
    const Settings& s_;
    std::istream& in_;
};

}  // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
    CLI::App app{"Finite lattice constructions, structural checks and theorem verification", "latkit"};
    app.require_subcommand(1);
    Settings s;
    app.add_option("--seed", s.seed, "Seed for random lattices and sampling");
    app.add_option("--max-size", s.max_size, "Largest catalog lattice used by verify");
    app.add_option("--samples", s.samples, "Number of seeded random instances used by verify");
    app.add_option("--guard", s.guard, "Cap on |A|*|B| for product-shaped constructions");
    app.add_option("--output", s.output, "Output path, - for standard output");
    app.add_flag("--timings", s.timings, "Add wall-clock fields to reports");
    app.add_option("--threads", s.threads, "Worker threads for verify (0: all cores)");

    std::string family;
    std::size_t n = 0, size = 0;
    auto* gen = app.add_subcommand("gen", "Emit a named or random lattice");
    gen->add_option("family", family, "Bn, Cn, B3, C4, M3, N5, W7 or random")->required();
    gen->add_option("--n", n, "Parameter of Bn / Cn");
    gen->add_option("--size", size, "Size of a random lattice");

    std::string op_name;
    std::vector<std::string> inputs;
    auto* op = app.add_subcommand("op", "Build a construction from lattice JSON inputs");
    op->add_option("name", op_name, "tensor|box|ltp|mL|nL|balanced|n5bracket|con|dual|product|power|ideals")
        ->required();
    op->add_option("inputs", inputs, "Lattice JSON files, - for standard input");
    op->add_option("--n", n, "Exponent for power");

    std::string prop, kind, s_label;
    auto* check = app.add_subcommand("check", "Decide a property; exit 0 when true, 1 when false");
    check->add_option("property", prop,
                      "amenable|condition-t|t-meet|classify|sharply-transferable|whitman|distributive|lattice|"
                      "spike|representable|ji-con|permutable|simple|iso|cong-preserving|embedding")
        ->required();
    check->add_option("inputs", inputs, "Input JSON files, - for standard input");
    check->add_option("--kind", kind, "Embedding kind for check embedding: diagonal|j|j_s");
    check->add_option("--s", s_label, "Label of s in S for the j_s embedding");

    std::string theorem;
    auto* verify = app.add_subcommand("verify", "Run a theorem verification suite (JSON lines)");
    verify->add_option("theorem", theorem, "glq-iso|ltp-iso|box-closure|m3n5-ltp|dual-ltp|capped-subtensor|"
                                           "eps-hom|diag-cpe|perm-pres")
        ->required();

    for (auto* sub : {gen, op, check, verify}) sub->fallthrough();

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    Result r;
    try {
        Commands cmd(s, in);
        if (*gen) {
            r = cmd.gen(family, n, size);
        } else if (*op) {
            r = cmd.op(op_name, inputs, n);
        } else if (*check) {
            r = cmd.check(prop, inputs, kind, s_label);
        } else {
            r = cmd.verify(theorem);
        }
    } catch (const NotALattice& e) {
        err << "error: " << e.what();
        if (e.witness()) err << " (elements " << e.witness()->first << ", " << e.witness()->second << ")";
        err << "\n";
        return 2;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const nlohmann::json::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    if (s.output == "-") {
        out << r.text;
    } else {
        std::ofstream f(s.output);
        if (!f) {
            err << "error: cannot write " << s.output << "\n";
            return 2;
        }
        f << r.text;
    }
    return r.code;
}

}  // namespace latkit
