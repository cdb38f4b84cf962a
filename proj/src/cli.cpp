#include "qsft/cli.hpp"

#include "qsft/bundle.hpp"
#include "qsft/invariants.hpp"
#include "qsft/metric.hpp"
#include "qsft/realization.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>

namespace qsft {

namespace {

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ParseError("cannot write '" + path + "'");
    f << content;
}

std::string decimal(const Rational& r) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", r.get_d());
    return buf;
}

std::string render_interval(const MetricInterval& m) {
    if (m.exact()) return to_string(m.lo);
    return "[" + to_string(m.lo) + ", " + to_string(m.hi) + "]";
}

void print_check(const Check& c, const char* name, std::ostream& out) {
    if (c.passed) {
        out << name << " holds\n";
    } else {
        out << name << " fails at " << c.witness << "\n";
    }
}

int cmd_check(const std::string& path, std::ostream& out) {
    const SeedBundle b = load_bundle(path);
    const HypothesisReport& r = b.pair.report();
    print_check(r.h0, "H0", out);
    print_check(r.h1, "H1", out);
    print_check(r.h2, "H2", out);
    print_check(r.primitive, "primitive", out);
    out << "H has a cycle: " << (r.h_has_cycle ? "yes" : "no") << "\n";
    out << "standing hypotheses: " << (r.standing() ? "hold" : "fail") << "\n";
    return r.standing() ? kExitOk : kExitDomain;
}

int cmd_invariants(const std::string& path, const std::string& format, std::ostream& out) {
    const SeedBundle b = load_bundle(path);
    const KTheoryTable k = ruelle_k_theory(b.pair);
    const HomologyTable h = homology_table(b.pair);
    auto presentation = [](const MarkedGroupPresentation& m) {
        return "lim(Z^" + std::to_string(m.size) + ", " + m.matrix.to_string() + ")";
    };
    const bool kv = format == "kv";
    for (const auto& row : h.rows) {
        const std::string v = row.variant == Variant::Stable ? "s" : "u";
        if (kv) {
            out << "homology_" << v << "_" << row.degree << " = " << presentation(row.group) << "\n";
        } else {
            out << "H^" << v << "_" << row.degree << " = " << presentation(row.group) << "  (" << row.group.label << ")\n";
        }
    }
    if (!kv) out << "all other homology groups are 0\n";
    const std::pair<const char*, const MarkedGroupPresentation*> pres[] = {
        {"k0_S", &k.k0_S}, {"k1_S", &k.k1_S}, {"k0_U", &k.k0_U}, {"k1_U", &k.k1_U}};
    for (const auto& [key, m] : pres) {
        out << key << " = " << presentation(*m);
        if (!kv) out << "  (" << m->label << ")";
        out << "\n";
    }
    const std::pair<const char*, const FgAbelianGroup*> groups[] = {
        {"k0_Rs", &k.k0_Rs}, {"k1_Rs", &k.k1_Rs}, {"k0_Ru", &k.k0_Ru}, {"k1_Ru", &k.k1_Ru}};
    for (const auto& [key, g] : groups) out << key << " = " << g->to_string() << "\n";
    out << "standing = " << (k.valid ? "true" : "false") << "\n";
    return k.valid ? kExitOk : kExitDomain;
}

int cmd_distance(const std::string& path, const std::string& a, const std::string& b, std::size_t depth,
                 bool show_decimal, std::ostream& out) {
    const SeedBundle bundle = load_bundle(path);
    const EmbeddingPair& p = bundle.pair;
    const LassoRay x = LassoRay::parse(p.g(), a);
    const LassoRay y = LassoRay::parse(p.g(), b);
    if (!x.valid_in(p.g()) || !y.valid_in(p.g())) throw ParseError("ray is not a path in G");
    const MetricInterval d = d_extended(p, x, y, depth);
    out << render_interval(d);
    if (show_decimal) out << " ~ " << decimal(d.lo) << (d.exact() ? "" : " .. " + decimal(d.hi));
    out << "\n";
    return kExitOk;
}

int cmd_zeta(const std::string& path, const std::string& ray, std::size_t depth, std::ostream& out) {
    const SeedBundle b = load_bundle(path);
    const LassoRay x = LassoRay::parse(b.pair.g(), ray);
    if (!x.valid_in(b.pair.g())) throw ParseError("ray is not a path in G");
    const ZetaValue z = zeta_approx(b.pair, x, depth);
    char buf[128];
    std::snprintf(buf, sizeof buf, "%.17g %+.17gi", z.value.real(), z.value.imag());
    out << "zeta = " << buf << "\n";
    out << "error <= " << to_string(z.error_bound) << " ~ " << decimal(z.error_bound) << "\n";
    return kExitOk;
}

int cmd_fibers(const std::string& path, const std::string& ray, std::ostream& out) {
    const SeedBundle b = load_bundle(path);
    const Graph& q = b.pair.quotient().graph;
    const LassoRay base = LassoRay::parse(q, ray);
    if (!base.valid_in(q)) throw ParseError("ray is not a path in the quotient graph");
    out << fiber_classify(b.pair, base).to_string() << "\n";
    return kExitOk;
}

int cmd_render(const std::string& path, std::size_t max_k, std::size_t depth, const std::string& min_radius,
               double scale, const std::string& output, std::ostream& out) {
    const SeedBundle b = load_bundle(path);
    Rational rmin;
    try {
        rmin = Rational(min_radius);
        rmin.canonicalize();
    } catch (const std::invalid_argument&) {
        throw ParseError("malformed --min-radius '" + min_radius + "'");
    }
    const std::string svg = render_svg(b.pair, max_k, depth, rmin, scale);
    const CircleEnumeration e = circle_specs(b.pair, max_k, depth, rmin);
    if (output.empty() || output == "-") {
        out << svg;
    } else {
        write_file(output, svg);
        out << "circles = " << e.specs.size() << "\n";
        out << "pruned = " << e.pruned << "\n";
        out << "pruned_radius_sum = " << to_string(e.pruned_radius_sum) << "\n";
    }
    return kExitOk;
}

int cmd_synthesize(const std::string& k1_text, const std::string& k0_text, const std::string& output,
                   std::ostream& out) {
    const FgAbelianGroup k1 = FgAbelianGroup::parse(k1_text);
    const FgAbelianGroup k0t = FgAbelianGroup::parse(k0_text);
    if (k0t.rank() != 0) throw ParseError("--k0tor must be a finite group");
    const EmbeddingPair p = synthesize_seed(k0t, k1);
    const KTheoryTable k = ruelle_k_theory(p);
    const FgAbelianGroup want0 = FgAbelianGroup::free(k1.rank()) + k0t;
    const bool ok = p.report().standing() && k.k0_Rs == want0 && k.k1_Rs == k1;
    const std::string text = format_bundle(p, "synthesized k1=" + k1.to_string() + " k0tor=" + k0t.to_string());
    if (output.empty() || output == "-") {
        out << text;
    } else {
        write_file(output, text);
    }
    std::ostream& rep = output.empty() || output == "-" ? std::cerr : out;
    rep << "G vertices = " << p.g().vertex_count() << ", edges = " << p.g().edge_count() << "\n";
    rep << "H vertices = " << p.h().vertex_count() << ", edges = " << p.h().edge_count() << "\n";
    rep << "standing = " << (p.report().standing() ? "true" : "false") << "\n";
    rep << "k0_Rs = " << k.k0_Rs.to_string() << " (target " << want0.to_string() << ")\n";
    rep << "k1_Rs = " << k.k1_Rs.to_string() << " (target " << k1.to_string() << ")\n";
    rep << "verified = " << (ok ? "true" : "false") << "\n";
    return ok ? kExitOk : kExitDomain;
}

int cmd_complex(const std::string& path, std::ostream& out) {
    const SeedBundle b = load_bundle(path);
    const PairComplex c = build_pair_complex(b.pair);
    for (std::size_t k = 0; k < c.vertex_cells.size(); ++k) out << "V" << k << " = " << c.vertex_cells[k].size() << "\n";
    for (std::size_t k = 0; k < c.edge_cells.size(); ++k)
        out << "E" << k << " = " << c.edge_cells[k].size() << "  initial_violations = " << c.initial_violations[k]
            << "  terminal_violations = " << c.terminal_violations[k] << "\n";
    out << "overlapping_vertices = " << c.overlapping_vertices << "\n";
    out << "overlapping_edges = " << c.overlapping_edges << "\n";
    out << "containments = " << (c.containments_hold() ? "hold" : "fail") << "\n";
    out << "H6 = " << c.h_words << "\n";
    out << "boundary_nonzero = " << c.boundary_nonzero << "\n";
    out << "quotient_rank = " << c.quotient_rank << "\n";
    out << "eventual_cells_are_V6 = " << (c.eventual_cells_are_v6 ? "true" : "false") << "\n";
    out << "quotient_matches_H = " << (c.quotient_matches_h ? "true" : "false") << "\n";
    const bool ok = c.containments_hold() && c.boundary_nonzero == 0 && c.quotient_rank == c.h_words &&
                    c.vertex_cells[6].size() == 2 * c.h_words;
    return ok ? kExitOk : kExitDomain;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Quotients of shifts of finite type: metrics, invariants and realizations", "qsft"};
    app.require_subcommand(1);

    std::string bundle, ray_a, ray_b, format = "text", min_radius = "0", output, k1 = "0", k0 = "0";
    std::size_t depth = 32, max_k = 1, render_depth = 4;
    double scale = 256;
    bool show_decimal = false;

    auto* check = app.add_subcommand("check", "Check the standing hypotheses");
    check->add_option("bundle", bundle)->required();

    auto* inv = app.add_subcommand("invariants", "Homology and K-theory");
    inv->add_option("bundle", bundle)->required();
    inv->add_option("--format", format)->check(CLI::IsMember({"text", "kv"}));

    auto* dist = app.add_subcommand("distance", "Distance between two rays");
    dist->add_option("bundle", bundle)->required();
    dist->add_option("x", ray_a)->required();
    dist->add_option("y", ray_b)->required();
    dist->add_option("--depth", depth)->check(CLI::PositiveNumber);
    dist->add_flag("--decimal", show_decimal);

    auto* zeta = app.add_subcommand("zeta", "Planar coordinate of a ray");
    zeta->add_option("bundle", bundle)->required();
    zeta->add_option("x", ray_a)->required();
    zeta->add_option("--depth", depth)->check(CLI::PositiveNumber);

    auto* fib = app.add_subcommand("fibers", "Shape of the fiber over a quotient ray");
    fib->add_option("bundle", bundle)->required();
    fib->add_option("base", ray_a)->required();

    auto* ren = app.add_subcommand("render", "SVG picture of the circle specifications");
    ren->add_option("bundle", bundle)->required();
    ren->add_option("--max-k", max_k);
    ren->add_option("--depth", render_depth);
    ren->add_option("--min-radius", min_radius);
    ren->add_option("--scale", scale)->check(CLI::PositiveNumber);
    ren->add_option("-o,--output", output);

    auto* syn = app.add_subcommand("synthesize", "Seed data with prescribed K-groups");
    syn->add_option("--k1", k1)->required();
    syn->add_option("--k0tor", k0)->required();
    syn->add_option("-o,--output", output);

    auto* cpx = app.add_subcommand("complex", "Pair-complex checks");
    cpx->add_option("bundle", bundle)->required();

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*check) return cmd_check(bundle, out);
        if (*inv) return cmd_invariants(bundle, format, out);
        if (*dist) return cmd_distance(bundle, ray_a, ray_b, depth, show_decimal, out);
        if (*zeta) return cmd_zeta(bundle, ray_a, depth, out);
        if (*fib) return cmd_fibers(bundle, ray_a, out);
        if (*ren) return cmd_render(bundle, max_k, render_depth, min_radius, scale, output, out);
        if (*syn) return cmd_synthesize(k1, k0, output, out);
        if (*cpx) return cmd_complex(bundle, out);
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitDomain;
    }
    return kExitUsage;
}

}  // namespace qsft
