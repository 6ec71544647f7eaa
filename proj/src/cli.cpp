#include "hyperreg/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <omp.h>

#include <CLI11.hpp>

#include "hyperreg/models.hpp"
#include "hyperreg/report.hpp"

namespace hyperreg {

namespace {

struct Options {
    // inputs
    std::string pattern, host, colouring, complex_in, outer;
    std::string out, json_out, manifest_out, map_out, certificate_out;
    // generation
    std::string kind = "host";
    std::uint32_t k = 3, n = 10, m = 8;
    std::vector<std::uint32_t> sizes;
    double d2 = 0.5, d3 = 0.5;
    std::vector<std::string> plant;
    double plant_density = 1.0;
    std::size_t max_degree = 4, hyperedges = 4, extra_edges = 0;
    // checks
    std::uint32_t ci = 0, cj = 1, ck = 2;
    std::optional<double> d;
    double delta = 0.1;
    std::optional<double> d3_fixed;
    double delta2 = 0.1, delta3 = 0.1;
    std::size_t r = 1;
    std::string notion = "d-delta";
    std::string mode = "exhaustive";
    std::string strategy = "induced";
    std::uint64_t budget = 0;
    std::uint64_t seed = 1;
    bool serial = false;
    // counting
    std::vector<std::uint32_t> class_map;
    bool graph_only = false;
    double nd = 0;
    std::size_t seeds = 10;
    double tolerance = 0.1;
    double beta = 0.25;
    double moment_delta = 0.1;
    double max_outliers = 0.1;
    double min_passing = 0.8;
    std::string peel = "2:0";
    // partition
    std::size_t t = 4, ell = 1;
    double eps1 = 0.1, eps2 = 0.1, eps3 = 0.5;
    std::size_t clique = 3;
    std::size_t pipeline_k = 0;
    double c0 = 0;
    std::size_t max_retries = 20;
    bool thin = false;
    // embed
    double alpha = 0.3, c = 1.0;
    std::string diagnose;
    // ramsey
    std::uint32_t m_max = 8;
    std::uint32_t split_depth = 4;
};

struct Outcome {
    json result;
    bool pass = true;
};

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw UsageError("cannot write " + path);
    out << text;
}

Vertex parse_vertex(const std::string& s) {
    const auto colon = s.find(':');
    if (colon == std::string::npos) throw UsageError("vertex must be written class:index, got '" + s + "'");
    try {
        return Vertex{static_cast<std::uint32_t>(std::stoul(s.substr(0, colon))),
                      static_cast<std::uint32_t>(std::stoul(s.substr(colon + 1)))};
    } catch (const std::exception&) {
        throw UsageError("bad vertex '" + s + "'");
    }
}

Execution exec_of(const Options& o) { return o.serial ? Execution::serial : Execution::parallel; }

GraphRegOptions graph_options(const Options& o) {
    GraphRegOptions g;
    g.mode = parse_search_mode(o.mode);
    if (o.budget) g.budget = o.budget;
    g.seed = o.seed;
    g.exec = exec_of(o);
    return g;
}

TriadRegOptions triad_options(const Options& o) {
    TriadRegOptions t;
    t.strategy = parse_triad_strategy(o.strategy);
    if (o.budget) t.budget = o.budget;
    t.seed = o.seed;
    t.exec = exec_of(o);
    return t;
}

Complex require_complex(const std::string& path, const char* flag) {
    if (path.empty()) throw UsageError(std::string("missing --") + flag);
    return parse_complex(read_file(path));
}

Colouring input_colouring(const Options& o, json& inputs) {
    if (!o.colouring.empty()) {
        inputs["colouring"] = o.colouring;
        return parse_colouring(read_file(o.colouring));
    }
    return random_colouring(o.m, o.seed);
}

// Red class of the colouring, or the hypergraph of a complex file (global ids).
Hypergraph3 input_hypergraph(const Options& o, json& inputs) {
    if (!o.complex_in.empty()) {
        inputs["complex"] = o.complex_in;
        const auto h = parse_complex(read_file(o.complex_in)).hypergraph();
        return Hypergraph3(h.vertex_count(), h.triples());
    }
    return input_colouring(o, inputs).colour_class(0);
}

Outcome cmd_gen(const Options& o, json& manifest) {
    if (o.out.empty()) throw UsageError("gen needs --out");
    Outcome res;
    json params;
    if (o.kind == "host") {
        HostParams p{o.k, o.n, o.sizes, o.d2, o.d3, o.seed};
        params = {{"k", o.k}, {"n", o.n}, {"sizes", p.class_sizes()}, {"d2", o.d2}, {"d3", o.d3}};
        Complex g;
        if (o.plant.empty()) {
            g = random_host(p, exec_of(o));
        } else {
            Planting pl;
            for (const auto& s : o.plant) pl.subset.push_back(parse_vertex(s));
            pl.density = o.plant_density;
            params["plant"] = o.plant;
            params["plant_density"] = o.plant_density;
            g = planted_host(p, pl, exec_of(o));
        }
        write_file(o.out, serialize_complex(g));
        res.result = {{"classes", g.class_count()}, {"e2", g.e2()}, {"e3", g.e3()}};
    } else if (o.kind == "pattern") {
        PatternParams p;
        if (!o.sizes.empty()) p.sizes = o.sizes;
        p.max_degree = o.max_degree;
        p.target_hyperedges = o.hyperedges;
        p.extra_edges = o.extra_edges;
        p.seed = o.seed;
        params = {{"sizes", p.sizes}, {"max_degree", p.max_degree}, {"hyperedges", p.target_hyperedges}, {"extra_edges", p.extra_edges}};
        const auto pr = random_pattern(p);
        write_file(o.out, serialize_complex(pr.complex));
        res.result = {{"e2", pr.complex.e2()}, {"e3", pr.complex.e3()}, {"achieved_degree", pr.achieved_degree}, {"shortfall", pr.shortfall}};
    } else if (o.kind == "colouring") {
        params = {{"m", o.m}};
        const auto c = random_colouring(o.m, o.seed);
        write_file(o.out, serialize_colouring(c));
        res.result = {{"m", c.m}, {"red", c.colour_class(0).edge_count()}, {"blue", c.colour_class(1).edge_count()}};
    } else {
        throw UsageError("--kind must be host, pattern or colouring");
    }
    manifest["constants"] = params;
    manifest["outputs"] = {{"file", o.out}};
    return res;
}

Outcome cmd_check_graph(const Options& o, json& manifest) {
    const auto g = require_complex(o.host, "host");
    manifest["inputs"]["host"] = o.host;
    if (o.ci >= g.class_count() || o.cj >= g.class_count() || o.ci == o.cj)
        throw UsageError("--i and --j must be distinct classes of the host");
    const auto i = std::min(o.ci, o.cj), j = std::max(o.ci, o.cj);
    const auto opt = graph_options(o);
    GraphRegVerdict v;
    if (o.d) {
        manifest["constants"] = {{"d", *o.d}, {"delta", o.delta}, {"notion", "d-delta"}};
        v = check_d_delta_regular(g.graph(), i, j, *o.d, o.delta, opt);
    } else {
        manifest["constants"] = {{"delta", o.delta}, {"notion", "delta"}};
        v = check_delta_regular(g.graph(), i, j, o.delta, opt);
    }
    Outcome res;
    res.result = to_json(v);
    res.result["density"] = rational_json(bipartite_density(g.graph().pair(i, j)));
    res.pass = v.status != RegStatus::irregular;
    return res;
}

Outcome cmd_check_triad(const Options& o, json& manifest) {
    const auto g = require_complex(o.host, "host");
    manifest["inputs"]["host"] = o.host;
    std::array<std::uint32_t, 3> cls{o.ci, o.cj, o.ck};
    std::sort(cls.begin(), cls.end());
    if (cls[2] >= g.class_count() || cls[0] == cls[1] || cls[1] == cls[2])
        throw UsageError("--i --j --k must be distinct classes of the host");
    const Triad p = Triad::from_complex(g, cls[0], cls[1], cls[2]);
    const auto opt = triad_options(o);
    TriadRegVerdict v;
    if (o.d3_fixed) {
        manifest["constants"] = {{"d3", *o.d3_fixed}, {"delta3", o.delta3}, {"r", o.r}};
        v = check_triad_regular(g.hypergraph(), p, *o.d3_fixed, o.delta3, o.r, opt);
    } else {
        manifest["constants"] = {{"delta3", o.delta3}, {"r", o.r}, {"form", "some d"}};
        v = check_triad_regular_any(g.hypergraph(), p, o.delta3, o.r, opt);
    }
    return {to_json(v), v.regular};
}

Outcome cmd_check_complex(const Options& o, json& manifest) {
    const auto g = require_complex(o.host, "host");
    manifest["inputs"]["host"] = o.host;
    ComplexRegOptions opt;
    opt.d2 = o.d2;
    opt.delta2 = o.delta2;
    opt.d3 = o.d3;
    opt.delta3 = o.delta3;
    opt.r = o.r;
    opt.notion = parse_graph_notion(o.notion);
    opt.graph = graph_options(o);
    opt.triad = triad_options(o);
    manifest["constants"] = {{"d2", o.d2}, {"delta2", o.delta2}, {"d3", o.d3}, {"delta3", o.delta3}, {"r", o.r}, {"notion", o.notion}};
    const auto rep = check_complex_regular(g, opt);
    return {to_json(rep), rep.regular};
}

Outcome cmd_count(const Options& o, json& manifest) {
    const auto h = require_complex(o.pattern, "pattern");
    const auto g = require_complex(o.host, "host");
    manifest["inputs"] = {{"pattern", o.pattern}, {"host", o.host}};
    manifest["constants"] = {{"class_map", o.class_map}, {"graph_only", o.graph_only}};
    const Count c = o.graph_only ? count_graph_copies(h, g, o.class_map, exec_of(o)) : count_copies(h, g, o.class_map, exec_of(o));
    return {{{"count", count_json(c)}}, true};
}

Outcome cmd_predict(const Options& o, json& manifest) {
    const auto h = require_complex(o.pattern, "pattern");
    manifest["inputs"]["pattern"] = o.pattern;
    manifest["constants"] = {{"n", o.nd}, {"d2", o.d2}, {"d3", o.d3}};
    json out{{"predicted", predicted_count(h, o.nd, o.d2, o.d3)}};
    if (!o.outer.empty()) {
        const auto hp = parse_complex(read_file(o.outer));
        manifest["inputs"]["outer"] = o.outer;
        out["predicted_extension"] = predicted_extension(h, hp, o.nd, o.d2, o.d3);
    }
    return {out, true};
}

Complex default_or(const std::string& path, json& manifest, const char* key) {
    if (path.empty()) return Complex::complete({1, 1, 1});
    manifest["inputs"][key] = path;
    return parse_complex(read_file(path));
}

Outcome cmd_verify_counting(const Options& o, json& manifest) {
    const auto h = default_or(o.pattern, manifest, "pattern");
    manifest["constants"] = {{"k", o.k}, {"n", o.n}, {"d2", o.d2}, {"d3", o.d3}, {"seeds", o.seeds}, {"tolerance", o.tolerance}};
    const double predicted = predicted_count(h, o.n, o.d2, o.d3);
    json runs = json::array();
    double total = 0;
    for (std::size_t s = 0; s < o.seeds; ++s) {
        const std::uint64_t seed = o.seed + s;
        const auto g = random_host({o.k, o.n, {}, o.d2, o.d3, seed}, exec_of(o));
        const Count c = count_copies(h, g, {}, exec_of(o));
        const double ratio = to_double(c) / predicted;
        total += ratio;
        runs.push_back({{"seed", seed}, {"count", count_json(c)}, {"ratio", ratio}});
    }
    const double mean = o.seeds ? total / static_cast<double>(o.seeds) : 0;
    const bool pass = o.seeds > 0 && std::abs(mean - 1) <= o.tolerance;
    return {{{"predicted", predicted}, {"runs", runs}, {"mean_ratio", mean}, {"pass", pass}}, pass};
}

Outcome cmd_verify_extension(const Options& o, json& manifest) {
    const auto hp = default_or(o.outer, manifest, "outer");
    const auto peeled = remove_vertex(hp, parse_vertex(o.peel));
    ExtensionPair e{peeled.complex, hp, peeled.original};
    validate_extension(e);
    manifest["constants"] = {{"k", o.k},         {"n", o.n},          {"d2", o.d2},
                             {"d3", o.d3},       {"seeds", o.seeds},  {"beta", o.beta},
                             {"delta", o.moment_delta}, {"max_outliers", o.max_outliers}, {"min_passing", o.min_passing},
                             {"peel", o.peel}};
    const double a = predicted_extension(e.h, e.hp, o.n, o.d2, o.d3);
    json runs = json::array();
    std::size_t passing = 0;
    for (std::size_t s = 0; s < o.seeds; ++s) {
        const std::uint64_t seed = o.seed + s;
        const auto g = random_host({o.k, o.n, {}, o.d2, o.d3, seed}, exec_of(o));
        std::vector<double> values;
        for (const auto& x : extension_counts(e, g)) values.push_back(to_double(x));
        const auto mr = moment_concentration(values, a, o.moment_delta, o.beta);
        const double frac = mr.n ? static_cast<double>(mr.outliers) / static_cast<double>(mr.n) : 0;
        const bool ok = frac <= o.max_outliers;
        passing += ok;
        runs.push_back({{"seed", seed}, {"moments", to_json(mr)}, {"outlier_fraction", frac}, {"pass", ok}});
    }
    const bool pass = static_cast<double>(passing) >= o.min_passing * static_cast<double>(o.seeds);
    return {{{"predicted_extension", a}, {"runs", runs}, {"passing_seeds", passing}, {"pass", pass}}, pass};
}

Outcome cmd_partition_check(const Options& o, json& manifest) {
    const auto g = input_hypergraph(o, manifest["inputs"]);
    manifest["constants"] = {{"t", o.t}, {"ell", o.ell}, {"eps1", o.eps1}, {"eps2", o.eps2}, {"delta3", o.delta3}, {"r", o.r}};
    const auto part = random_slicing_partition(g.vertex_count(), o.t, o.ell, o.seed);
    const auto pc = check_partition(part, o.ell, o.t, o.eps1, o.eps2, graph_options(o));
    const auto rp = check_regular_partition(g, part, o.delta3, o.r, triad_options(o));
    const bool pass = pc.irregular_edges_ok && pc.exceptional_pairs_ok && rp.pass;
    return {{{"partition", to_json(pc)}, {"triads", to_json(rp)}, {"pass", pass}}, pass};
}

PartitionReport classify(const Options& o, const Hypergraph3& g, json& manifest) {
    manifest["constants"] = {{"t", o.t},         {"ell", o.ell}, {"eps1", o.eps1}, {"eps2", o.eps2},
                             {"eps3", o.eps3},   {"delta3", o.delta3}, {"r", o.r}};
    const auto part = random_slicing_partition(g.vertex_count(), o.t, o.ell, o.seed);
    return classify_pairs_triples(g, part, o.eps1, o.eps2, o.eps3, o.delta3, o.r, graph_options(o), triad_options(o));
}

Outcome cmd_reduce(const Options& o, json& manifest) {
    const auto g = input_hypergraph(o, manifest["inputs"]);
    const auto rep = classify(o, g, manifest);
    return {{{"report", to_json(rep)}, {"reduced", to_json(reduced_hypergraph(rep))}}, true};
}

Outcome cmd_turan(const Options& o, json& manifest) {
    const auto g = input_hypergraph(o, manifest["inputs"]);
    const auto rep = classify(o, g, manifest);
    manifest["constants"]["k"] = o.clique;
    manifest["constants"]["c0"] = o.c0;
    const auto reduced = reduced_hypergraph(rep);
    const auto tr = turan_clique(reduced, o.clique, o.c0);
    return {{{"reduced", to_json(reduced)}, {"turan", to_json(tr)}}, tr.clique.has_value()};
}

Outcome cmd_pipeline(const Options& o, json& manifest) {
    const auto colouring = input_colouring(o, manifest["inputs"]);
    const auto h = require_complex(o.pattern, "pattern");
    manifest["inputs"]["pattern"] = o.pattern;
    PipelineConfig cfg;
    cfg.t = o.t;
    cfg.ell = o.ell;
    cfg.eps1 = o.eps1;
    cfg.eps2 = o.eps2;
    cfg.eps3 = o.eps3;
    cfg.delta3 = o.delta3;
    cfg.r = o.r;
    cfg.k = o.pipeline_k;
    cfg.c0 = o.c0;
    cfg.max_retries = o.max_retries;
    cfg.seed = o.seed;
    cfg.thin = o.thin;
    cfg.graph = graph_options(o);
    cfg.triad = triad_options(o);
    cfg.exec = exec_of(o);
    manifest["constants"] = {{"m", colouring.m},        {"t", o.t},           {"ell", o.ell},     {"eps1", o.eps1},
                             {"eps2", o.eps2},          {"eps3", o.eps3},     {"delta3", o.delta3}, {"r", o.r},
                             {"k", o.pipeline_k},       {"c0", o.c0},         {"max_retries", o.max_retries},
                             {"thin", o.thin}};
    const auto res = run_pipeline(colouring, h, cfg);
    return {to_json(res), res.success()};
}

Outcome cmd_embed(const Options& o, json& manifest, std::ostream& out) {
    const auto h = require_complex(o.pattern, "pattern");
    const auto g = require_complex(o.host, "host");
    manifest["inputs"] = {{"pattern", o.pattern}, {"host", o.host}};
    EmbedderConfig cfg;
    cfg.alpha = o.alpha;
    cfg.beta = o.beta;
    cfg.c = o.c;
    cfg.d2 = o.d2;
    cfg.d3 = o.d3;
    cfg.delta2 = o.delta2;
    cfg.delta3 = o.delta3;
    cfg.r = o.r;
    cfg.max_degree = o.max_degree;
    cfg.exec = exec_of(o);
    manifest["constants"] = {{"alpha", cfg.alpha}, {"beta", cfg.beta}, {"c", cfg.c}, {"d2", cfg.d2}, {"d3", cfg.d3},
                             {"delta2", cfg.delta2}, {"delta2_prime", cfg.effective_delta2_prime()},
                             {"delta3", cfg.delta3}, {"r", cfg.r}, {"max_degree", cfg.max_degree}};
    const auto res = embed(h, g, cfg);
    Outcome oc{to_json(res), res.embedding.has_value()};
    if (res.embedding) {
        const auto lines = embedding_lines(h, *res.embedding);
        if (!o.map_out.empty())
            write_file(o.map_out, lines);
        else if (!o.json_out.empty())
            out << lines;
    }
    if (!o.diagnose.empty()) {
        const Vertex v = parse_vertex(o.diagnose);
        const double n = g.class_size(v.cls);
        oc.result["diagnostics"] = {
            {"vertex", to_json(v)},
            {"count_ratio", to_json(count_ratio_check(h, v, g, cfg.alpha, cfg.d2, cfg.d3))},
            {"typicality", to_json(typicality_report(h, v, g, cfg.beta, n, cfg.d2, cfg.d3))},
            {"usefulness", to_json(usefulness_report(h, v, g, cfg.delta2, cfg.d2, n))}};
    }
    return oc;
}

Outcome cmd_ramsey(const Options& o, json& manifest) {
    const auto h = require_complex(o.pattern, "pattern");
    manifest["inputs"]["pattern"] = o.pattern;
    RamseyOptions opt;
    opt.m_max = o.m_max;
    if (o.budget) opt.budget = o.budget;
    opt.split_depth = o.split_depth;
    manifest["constants"] = {{"m_max", opt.m_max}, {"budget", opt.budget}, {"split_depth", opt.split_depth}};
    const auto hg = h.hypergraph();
    const auto res = exact_ramsey(Hypergraph3(hg.vertex_count(), hg.triples()), opt);
    if (res.certificate && !o.certificate_out.empty()) write_file(o.certificate_out, serialize_colouring(*res.certificate));
    return {to_json(res), true};
}

void apply_thread_cap() {
    if (const char* env = std::getenv("HYPERREG_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) omp_set_num_threads(n);
    }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    apply_thread_cap();
    Options o;
    CLI::App app{"Regularity, counting and embedding toolkit for 3-uniform hypergraph complexes", "hyperreg"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kToolVersion);

    auto common = [&](CLI::App* s) {
        s->add_option("--seed", o.seed, "random seed");
        s->add_option("--json-out", o.json_out, "write the JSON report here instead of stdout");
        s->add_option("--manifest-out", o.manifest_out, "write the run manifest (with wall-clock) here");
        s->add_flag("--serial", o.serial, "use the serial reference kernels");
    };
    auto search = [&](CLI::App* s) {
        s->add_option("--mode", o.mode, "graph regularity search: exhaustive|sampled");
        s->add_option("--strategy", o.strategy, "triad search: induced|edge-sampled|exhaustive-tiny");
        s->add_option("--budget", o.budget, "sample or node budget");
    };
    auto colouring_in = [&](CLI::App* s) {
        s->add_option("--colouring", o.colouring, "colouring file (red class is used)");
        s->add_option("--complex", o.complex_in, "complex file whose hypergraph is used");
        s->add_option("--m", o.m, "vertex count of a random colouring");
    };

    auto* gen = app.add_subcommand("gen", "generate a host, pattern or colouring");
    common(gen);
    gen->add_option("--kind", o.kind, "host|pattern|colouring");
    gen->add_option("--out", o.out, "output file")->required();
    gen->add_option("--k", o.k);
    gen->add_option("--n", o.n);
    gen->add_option("--m", o.m);
    gen->add_option("--sizes", o.sizes)->delimiter(',');
    gen->add_option("--d2", o.d2);
    gen->add_option("--d3", o.d3);
    gen->add_option("--plant", o.plant, "planted vertices class:index")->delimiter(',');
    gen->add_option("--plant-density", o.plant_density);
    gen->add_option("--max-degree", o.max_degree);
    gen->add_option("--hyperedges", o.hyperedges);
    gen->add_option("--extra-edges", o.extra_edges);

    auto* cgr = app.add_subcommand("check-graph-reg", "regularity of one class pair");
    common(cgr);
    search(cgr);
    cgr->add_option("--host", o.host)->required();
    cgr->add_option("--i", o.ci);
    cgr->add_option("--j", o.cj);
    cgr->add_option("--d", o.d, "target density; omit for the delta-regular form");
    cgr->add_option("--delta", o.delta);

    auto* ctr = app.add_subcommand("check-triad-reg", "regularity of one class triple");
    common(ctr);
    search(ctr);
    ctr->add_option("--host", o.host)->required();
    ctr->add_option("--i", o.ci);
    ctr->add_option("--j", o.cj);
    ctr->add_option("--k", o.ck);
    ctr->add_option("--d3", o.d3_fixed, "target density; omit for the some-d form");
    ctr->add_option("--delta3", o.delta3);
    ctr->add_option("--r", o.r);

    auto* ccr = app.add_subcommand("check-complex-reg", "regularity of a whole complex");
    common(ccr);
    search(ccr);
    ccr->add_option("--host", o.host)->required();
    ccr->add_option("--d2", o.d2);
    ccr->add_option("--delta2", o.delta2);
    ccr->add_option("--d3", o.d3);
    ccr->add_option("--delta3", o.delta3);
    ccr->add_option("--r", o.r);
    ccr->add_option("--notion", o.notion, "d-delta|delta");

    auto* cnt = app.add_subcommand("count", "exact copy count");
    common(cnt);
    cnt->add_option("--pattern", o.pattern)->required();
    cnt->add_option("--host", o.host)->required();
    cnt->add_option("--class-map", o.class_map)->delimiter(',');
    cnt->add_flag("--graph-only", o.graph_only);

    auto* pre = app.add_subcommand("predict", "predicted count n^t d2^e2 d3^e3");
    common(pre);
    pre->add_option("--pattern", o.pattern)->required();
    pre->add_option("--outer", o.outer, "pattern H' for the predicted extension count");
    pre->add_option("--n", o.nd)->required();
    pre->add_option("--d2", o.d2);
    pre->add_option("--d3", o.d3);

    auto* vc = app.add_subcommand("verify-counting", "count/predicted over seeded random hosts");
    common(vc);
    vc->add_option("--pattern", o.pattern, "default: one hyperedge");
    vc->add_option("--k", o.k);
    vc->add_option("--n", o.n);
    vc->add_option("--d2", o.d2);
    vc->add_option("--d3", o.d3);
    vc->add_option("--seeds", o.seeds);
    vc->add_option("--tolerance", o.tolerance);

    auto* ve = app.add_subcommand("verify-extension", "extension counts against (1 +- beta) predicted");
    common(ve);
    ve->add_option("--outer", o.outer, "pattern H' (default: one hyperedge)");
    ve->add_option("--peel", o.peel, "vertex class:index removed from H' to form H");
    ve->add_option("--k", o.k);
    ve->add_option("--n", o.n);
    ve->add_option("--d2", o.d2);
    ve->add_option("--d3", o.d3);
    ve->add_option("--seeds", o.seeds);
    ve->add_option("--beta", o.beta);
    ve->add_option("--delta", o.moment_delta);
    ve->add_option("--max-outliers", o.max_outliers);
    ve->add_option("--min-passing", o.min_passing);

    auto* pc = app.add_subcommand("partition-check", "random slicing partition: irregular edges, exceptional pairs and triads");
    common(pc);
    search(pc);
    colouring_in(pc);
    pc->add_option("--t", o.t);
    pc->add_option("--ell", o.ell);
    pc->add_option("--eps1", o.eps1);
    pc->add_option("--eps2", o.eps2);
    pc->add_option("--delta3", o.delta3);
    pc->add_option("--r", o.r);

    auto add_classify = [&](CLI::App* s) {
        common(s);
        search(s);
        colouring_in(s);
        s->add_option("--t", o.t);
        s->add_option("--ell", o.ell);
        s->add_option("--eps1", o.eps1);
        s->add_option("--eps2", o.eps2);
        s->add_option("--eps3", o.eps3);
        s->add_option("--delta3", o.delta3);
        s->add_option("--r", o.r);
    };
    auto* red = app.add_subcommand("reduce", "good pairs, good triples and the reduced hypergraph");
    add_classify(red);
    auto* tur = app.add_subcommand("turan", "clique search in the reduced hypergraph");
    add_classify(tur);
    tur->add_option("--clique", o.clique, "clique order k");
    tur->add_option("--c0", o.c0);

    auto* pip = app.add_subcommand("pipeline", "colour, partition, reduce, select triads and embed");
    add_classify(pip);
    pip->add_option("--pattern", o.pattern)->required();
    pip->add_option("--clique", o.pipeline_k, "clique order k (0: 2*Delta+1)");
    pip->add_option("--c0", o.c0);
    pip->add_option("--max-retries", o.max_retries);
    pip->add_flag("--thin", o.thin, "thin red triads to density 1/2");

    auto* emb = app.add_subcommand("embed", "find a copy of a pattern in a host");
    common(emb);
    emb->add_option("--pattern", o.pattern)->required();
    emb->add_option("--host", o.host)->required();
    emb->add_option("--map-out", o.map_out, "write map lines here");
    emb->add_option("--alpha", o.alpha);
    emb->add_option("--beta", o.beta);
    emb->add_option("--c", o.c);
    emb->add_option("--d2", o.d2);
    emb->add_option("--d3", o.d3);
    emb->add_option("--delta2", o.delta2);
    emb->add_option("--delta3", o.delta3);
    emb->add_option("--r", o.r);
    emb->add_option("--max-degree", o.max_degree);
    emb->add_option("--diagnose", o.diagnose, "vertex class:index for count-ratio, typicality and usefulness");

    auto* ram = app.add_subcommand("ramsey", "exact Ramsey search for a small pattern");
    common(ram);
    ram->add_option("--pattern", o.pattern)->required();
    ram->add_option("--m-max", o.m_max);
    ram->add_option("--budget", o.budget);
    ram->add_option("--split-depth", o.split_depth);
    ram->add_option("--certificate-out", o.certificate_out);

    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    const auto* sub = app.get_subcommands().front();
    const std::string name = sub->get_name();
    json manifest{{"subcommand", name}, {"version", kToolVersion}, {"seed", o.seed}, {"inputs", json::object()}};
    if (sub->get_option_no_throw("--strategy") != nullptr) manifest["strategy"] = {{"graph", o.mode}, {"triad", o.strategy}};
    manifest["execution"] = o.serial ? "serial" : "parallel";

    const auto start = std::chrono::steady_clock::now();
    Outcome oc;
    try {
        if (name == "gen") oc = cmd_gen(o, manifest);
        else if (name == "check-graph-reg") oc = cmd_check_graph(o, manifest);
        else if (name == "check-triad-reg") oc = cmd_check_triad(o, manifest);
        else if (name == "check-complex-reg") oc = cmd_check_complex(o, manifest);
        else if (name == "count") oc = cmd_count(o, manifest);
        else if (name == "predict") oc = cmd_predict(o, manifest);
        else if (name == "verify-counting") oc = cmd_verify_counting(o, manifest);
        else if (name == "verify-extension") oc = cmd_verify_extension(o, manifest);
        else if (name == "partition-check") oc = cmd_partition_check(o, manifest);
        else if (name == "reduce") oc = cmd_reduce(o, manifest);
        else if (name == "turan") oc = cmd_turan(o, manifest);
        else if (name == "pipeline") oc = cmd_pipeline(o, manifest);
        else if (name == "embed") oc = cmd_embed(o, manifest, out);
        else if (name == "ramsey") oc = cmd_ramsey(o, manifest);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    json report{{"schema_version", kSchemaVersion}, {"tool", "hyperreg"}, {"manifest", manifest},
                {"pass", oc.pass}, {"result", oc.result}};
    const std::string text = report.dump(2) + "\n";
    try {
        if (o.json_out.empty())
            out << text;
        else
            write_file(o.json_out, text);
        if (name == "gen" && o.json_out.empty()) write_file(o.out + ".json", text);
        if (!o.manifest_out.empty()) {
            json m = manifest;
            m["argv"] = std::vector<std::string>(args.begin() + 1, args.end());
            m["wall_clock_s"] = elapsed;
            write_file(o.manifest_out, m.dump(2) + "\n");
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    err << name << ": " << (oc.pass ? "pass" : "fail") << " (" << elapsed << " s)\n";
    return oc.pass ? 0 : 1;
}

int run(int argc, const char* const* argv) {
    return run(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}

}  // namespace hyperreg
