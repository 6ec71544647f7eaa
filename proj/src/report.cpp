#include "hyperreg/report.hpp"

#include <limits>

namespace hyperreg {

json count_json(const Count& c) {
    if (c >= 0 && c <= std::numeric_limits<std::uint64_t>::max()) return c.convert_to<std::uint64_t>();
    return c.str();
}

json rational_json(const Rational& q) { return to_string(q); }

json to_json(Vertex v) { return json::array({v.cls, v.idx}); }

json to_json(const std::vector<Vertex>& vs) {
    json out = json::array();
    for (auto v : vs) out.push_back(to_json(v));
    return out;
}

json to_json(const GraphRegVerdict& v) {
    json out{{"status", to_string(v.status)}, {"mode", to_string(v.mode)}, {"subsets_examined", v.subsets_examined}};
    if (v.witness)
        out["witness"] = {{"x", v.witness->x}, {"y", v.witness->y}, {"density", rational_json(v.witness->density)}};
    return out;
}

namespace {

json edges_json(const BipartiteGraph& g) {
    json out = json::array();
    for (const auto& [u, v] : g.edges()) out.push_back(json::array({u, v}));
    return out;
}

json witness_json(const TriadWitness& w) {
    json out{{"triangles", w.triangles}, {"hyperedges", w.hyperedges}, {"density", rational_json(w.density)}};
    if (!w.induced_sets.empty()) {
        json sets = json::array();
        for (const auto& s : w.induced_sets) sets.push_back(json::array({s[0], s[1], s[2]}));
        out["induced_sets"] = sets;
    } else {
        json parts = json::array();
        for (const auto& q : w.tuple) parts.push_back({{"ab", edges_json(q.ab)}, {"bc", edges_json(q.bc)}, {"ac", edges_json(q.ac)}});
        out["tuple"] = parts;
    }
    return out;
}

}  // namespace

json to_json(const TriadRegVerdict& v) {
    json out{{"regular", v.regular},
             {"strategy", to_string(v.strategy)},
             {"complete", v.complete},
             {"triad_triangles", v.triad_triangles},
             {"triad_density", rational_json(v.triad_density)},
             {"d3", v.d3},
             {"candidates", v.candidates}};
    if (v.witness) out["witness"] = witness_json(*v.witness);
    if (v.opposite) out["opposite"] = witness_json(*v.opposite);
    return out;
}

json to_json(const ComplexRegReport& r) {
    json pairs = json::array(), triples = json::array();
    for (const auto& p : r.pairs)
        pairs.push_back({{"i", p.i}, {"j", p.j}, {"density", rational_json(p.density)}, {"verdict", to_json(p.verdict)}});
    for (const auto& t : r.triples)
        triples.push_back({{"i", t.i}, {"j", t.j}, {"k", t.k}, {"status", to_string(t.status)}, {"verdict", to_json(t.verdict)}});
    return {{"regular", r.regular}, {"pairs", pairs}, {"triples", triples}};
}

json to_json(const PartitionCheck& c) {
    json pairs = json::array();
    for (const auto& p : c.pairs)
        pairs.push_back({{"i", p.i},
                         {"j", p.j},
                         {"p0_edges", p.p0_edges},
                         {"p0_small", p.p0_small},
                         {"slice_densities", p.slice_densities},
                         {"irregular_edges", p.irregular_edges}});
    return {{"eps1", c.eps1},
            {"eps2", c.eps2},
            {"irregular_edges", c.irregular_edges},
            {"irregular_edge_bound", c.irregular_edge_bound},
            {"irregular_edges_ok", c.irregular_edges_ok},
            {"exceptional_pairs", c.exceptional_pairs},
            {"exceptional_pair_bound", c.exceptional_pair_bound},
            {"exceptional_pairs_ok", c.exceptional_pairs_ok},
            {"pairs", pairs}};
}

json to_json(const RegularPartitionCheck& c) {
    return {{"mass", count_json(c.mass)}, {"bound", c.bound}, {"triads", c.triads}, {"irregular", c.irregular}, {"pass", c.pass}};
}

json to_json(const PartitionReport& r) {
    json pairs = json::array(), triples = json::array();
    for (const auto& p : r.pairs)
        pairs.push_back({{"i", p.i},
                         {"j", p.j},
                         {"first", p.first},
                         {"irregular_slices", p.irregular_slices},
                         {"second", p.second},
                         {"good", p.good},
                         {"half_ell", p.half_ell}});
    for (const auto& t : r.triples)
        triples.push_back({{"i", t.i},
                           {"j", t.j},
                           {"k", t.k},
                           {"pairs_good", t.pairs_good},
                           {"irregular_triads", t.irregular_triads},
                           {"good", t.good}});
    return {{"eps1", r.eps1},
            {"eps2", r.eps2},
            {"eps3", r.eps3},
            {"delta3", r.delta3},
            {"r", r.r},
            {"d2", r.d2},
            {"delta2", r.delta2},
            {"t", r.t},
            {"bad_triples", r.bad_triples},
            {"bad_triple_bound", r.bad_triple_bound},
            {"bad_triple_bound_met", r.bad_triple_bound_met},
            {"half_ell_consequence", r.half_ell_consequence},
            {"pairs", pairs},
            {"triples", triples}};
}

json to_json(const Hypergraph3& h) {
    json triples = json::array();
    for (const auto& t : h.triples()) triples.push_back(json::array({t[0], t[1], t[2]}));
    return {{"vertices", h.vertex_count()}, {"edges", h.edge_count()}, {"triples", triples}};
}

json to_json(const TuranResult& r) {
    json out{{"density", r.density}, {"c0", r.c0}, {"above_c0", r.above_c0}, {"nodes", r.nodes}};
    out["clique"] = r.clique ? json(*r.clique) : json(nullptr);
    return out;
}

json to_json(const TriadSystem& s) {
    json alpha = json::array();
    for (std::size_t a = 0; a < s.clusters.size(); ++a)
        for (std::size_t b = a + 1; b < s.clusters.size(); ++b)
            alpha.push_back({{"i", s.clusters[a]}, {"j", s.clusters[b]}, {"slice", s.alpha[a][b]}});
    return {{"clusters", s.clusters}, {"slices", alpha}};
}

json to_json(const CliqueColouring& c) {
    json triples = json::array();
    for (const auto& t : c.triples)
        triples.push_back({{"a", t.a},
                           {"b", t.b},
                           {"c", t.c},
                           {"triangles", t.triangles},
                           {"density", rational_json(t.density)},
                           {"colour", t.colour == 0 ? "red" : "blue"}});
    json out{{"triples", triples}};
    if (c.thinned_red) out["thinning"] = {{"seed", c.thinning_seed}, {"red_hyperedges", c.thinned_red->edge_count()}};
    return out;
}

json to_json(const EmbedResult& r) {
    json out{{"found", r.embedding.has_value()}, {"order", to_json(r.order)}};
    if (r.embedding) out["embedding"] = to_json(*r.embedding);
    if (r.failure) {
        json deepest = json::array();
        for (const auto& [p, v] : r.failure->deepest) deepest.push_back({{"pattern", to_json(p)}, {"host", to_json(v)}});
        out["failure"] = {{"deepest", deepest}, {"stuck", to_json(r.failure->stuck)}};
    }
    return out;
}

json to_json(const CountRatio& r) {
    return {{"lhs", count_json(r.lhs)}, {"hh_count", count_json(r.hh_count)}, {"factor", r.factor}, {"rhs", r.rhs}, {"pass", r.pass}};
}

json to_json(const TypicalityReport& r) {
    json ext = json::array();
    for (const auto& x : r.extensions) ext.push_back(count_json(x));
    json atyp = json::array();
    for (const auto& e : r.atypical) atyp.push_back(to_json(e));
    return {{"copies", r.copies},         {"typical", r.typical}, {"fraction", r.fraction}, {"predicted", r.predicted},
            {"threshold", r.threshold}, {"extensions", ext},    {"atypical", atyp}};
}

json to_json(const UsefulnessReport& r) {
    json off = json::array();
    for (const auto& o : r.offenders)
        off.push_back({{"copy", to_json(o.copy)}, {"subset", to_json(o.subset)}, {"class", o.cls}, {"size", o.size}, {"lo", o.lo}, {"hi", o.hi}});
    return {{"copies", r.copies}, {"useful", r.useful}, {"fraction", r.fraction}, {"conditions", r.conditions}, {"offenders", off}};
}

json to_json(const RamseyResult& r) {
    json steps = json::array();
    for (const auto& s : r.steps)
        steps.push_back({{"m", s.m}, {"outcome", to_string(s.outcome)}, {"nodes", s.nodes}, {"copies", s.copies}});
    json out{{"lower", r.lower}};
    out["exact"] = r.exact ? json(*r.exact) : json(nullptr);
    out["steps"] = steps;
    if (r.certificate) out["certificate_m"] = r.certificate->m;
    return out;
}

json to_json(const PipelineResult& r) {
    json stages = json::array();
    for (const auto& s : r.stages) stages.push_back({{"stage", s.name}, {"ok", s.ok}, {"detail", s.detail}});
    json out{{"success", r.success()}, {"max_degree", r.max_degree}, {"stages", stages}};
    if (r.report) out["reduced_good_triples"] = reduced_hypergraph(*r.report).edge_count();
    if (r.clique) out["clique"] = *r.clique;
    if (r.system) out["triad_system"] = to_json(*r.system);
    if (r.clique_colouring) out["clique_colouring"] = to_json(*r.clique_colouring);
    if (r.monochromatic) {
        out["monochromatic"] = *r.monochromatic;
        out["colour"] = r.colour == 0 ? "red" : "blue";
        out["assignment"] = r.assignment;
    }
    if (r.host) out["host"] = {{"classes", r.host->class_count()}, {"e2", r.host->e2()}, {"e3", r.host->e3()}};
    if (r.embedding) out["embedding"] = to_json(*r.embedding);
    if (!r.image.empty()) {
        out["image"] = r.image;
        out["monochromatic_copy"] = r.monochromatic_copy;
    }
    return out;
}

json to_json(const MomentReport& r) {
    return {{"n", r.n},
            {"sum", r.sum},
            {"sum_sq", r.sum_sq},
            {"first_moment", r.first_moment},
            {"second_moment", r.second_moment},
            {"outliers", r.outliers},
            {"pass", r.pass}};
}

std::string embedding_lines(const Complex& pattern, const Embedding& phi) {
    std::string out;
    for (std::uint32_t g = 0; g < phi.size(); ++g) {
        const Vertex p = pattern.vertex(g);
        out += "map " + std::to_string(p.cls) + " " + std::to_string(p.idx) + " " + std::to_string(phi[g].idx) + "\n";
    }
    return out;
}

}  // namespace hyperreg
