// twistkh.cpp -- command-line front end.
//
// Exit codes: 0 success (all checks pass or vacuous), 1 check failure,
// 2 configuration/parse/validation error, 3 internal assertion.

#include <cstdlib>
#include <iostream>

#include "CLI11.hpp"

#include "twistkh/kauffman.hpp"
#include "twistkh/report.hpp"

using namespace twistkh;

namespace {

struct RunConfig {
    std::string catalog_path;
    std::string knot;
    std::string pd;
    std::string flavor = "unreduced";
    int n = 2;
    int p_max = 3;
    int site = 0;
    int i = 0, j = 1, rows = 2;
    std::string pair_with;
    std::string window;
    std::string format = "json";
    int threads = 1;
    bool seed_check = false;
};

std::string default_catalog() {
    if (const char* env = std::getenv("TWISTKH_CATALOG"))
        return env;
#ifdef TWISTKH_DEFAULT_CATALOG
    return TWISTKH_DEFAULT_CATALOG;
#else
    return "data/catalog.json";
#endif
}

PlanarDiagram resolve_diagram(const RunConfig& cfg) {
    if (!cfg.pd.empty()) {
        PlanarDiagram d = parse_pd(cfg.pd);
        validate_diagram(d);
        d.name = "pd-input";
        return d;
    }
    if (cfg.knot.empty())
        throw ValidationError("provide --knot NAME or --pd CODE");
    auto catalog = load_catalog(cfg.catalog_path);
    return catalog_get(catalog, cfg.knot);
}

Theory make_theory(const RunConfig& cfg) {
    if (cfg.n != 2)
        throw ValidationError("compute commands support only n = 2 (got n = " +
                              std::to_string(cfg.n) + "); gradings for other n appear only in "
                              "twist-complex bookkeeping");
    Theory t;
    t.flavor = flavor_from_string(cfg.flavor);
    return t;
}

int cmd_compute(const RunConfig& cfg) {
    PlanarDiagram d = resolve_diagram(cfg);
    Theory t = make_theory(cfg);
    BigradedHomology h = khovanov_homology(d, t, cfg.threads);
    if (cfg.seed_check && t.flavor == Flavor::Unreduced) {
        LaurentQ chi = euler_characteristic(cube(d, t));
        LaurentQ jones = jones_unnormalized(d);
        if (chi != jones) {
            std::cerr << "seed-check FAILED: Euler characteristic " << chi.str("q")
                      << " != Jones " << jones.str("q") << "\n";
            return 3;
        }
        std::cerr << "seed-check ok: " << jones.str("q") << "\n";
    }
    std::cout << (cfg.format == "table" ? homology_table(h, t.flavor, d.name)
                                        : homology_json(h, t.flavor, d.name))
              << "\n";
    return 0;
}

int cmd_family(const RunConfig& cfg, const std::string& check) {
    Theory t = make_theory(cfg);
    PlanarDiagram base = resolve_diagram(cfg);
    if (base.sites.empty())
        throw ValidationError("family base diagram has no twist site");
    TwistFamily fam(base, static_cast<std::size_t>(cfg.site), t, cfg.threads);
    CheckReport rep;
    if (check == "splitting")
        rep = verify_splitting(fam, cfg.p_max);
    else if (check == "stab")
        rep = verify_stab_ranges(fam, cfg.i, cfg.j);
    else if (check == "ladders")
        rep = verify_ladders(fam, cfg.rows);
    else if (check == "s")
        rep = check_sn_constancy(fam, cfg.p_max);
    else if (check == "nonvanishing")
        rep = check_nonvanishing(fam, cfg.p_max);
    else if (check == "pair") {
        if (cfg.pair_with.empty())
            throw ValidationError("pair check requires --pair-with NAME");
        auto catalog = load_catalog(cfg.catalog_path);
        const PlanarDiagram& other = catalog_get(catalog, cfg.pair_with);
        if (other.sites.empty())
            throw ValidationError("pair base diagram has no twist site");
        TwistFamily fam_b(other, 0, t, cfg.threads);
        rep = isomorphic_pair_check(fam, fam_b, cfg.p_max);
    } else {
        throw ValidationError("unknown family check '" + check +
                              "' (splitting|stab|ladders|s|nonvanishing|pair)");
    }
    std::cout << (cfg.format == "table" ? check_report_table(rep, base.name)
                                        : check_report_json(rep, base.name))
              << "\n";
    return rep.pass ? 0 : 1;
}

int cmd_stable(const RunConfig& cfg) {
    Theory t = make_theory(cfg);
    PlanarDiagram base = resolve_diagram(cfg);
    if (base.sites.empty())
        throw ValidationError("stable command requires a diagram with a twist site");
    int lo = 0, hi = 0;
    if (std::sscanf(cfg.window.c_str(), "%d,%d", &lo, &hi) != 2 || lo > hi)
        throw ValidationError("invalid --window A,B");
    StableHomology sh = stable_homology(base, static_cast<std::size_t>(cfg.site), t, lo, hi,
                                        cfg.threads);
    std::cout << (cfg.format == "table" ? stable_table(sh, t.flavor, base.name)
                                        : stable_json(sh, t.flavor, base.name))
              << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    RunConfig cfg;
    cfg.catalog_path = default_catalog();

    CLI::App app{"twistkh: Khovanov homology and twist-family verification"};
    app.require_subcommand(1);
    app.fallthrough(); // global flags may follow the subcommand
    app.add_option("--catalog", cfg.catalog_path, "catalog JSON path");
    app.add_option("--threads", cfg.threads, "worker threads");
    app.add_option("--format", cfg.format, "json|table")->check(CLI::IsMember({"json", "table"}));
    app.add_option("-n", cfg.n, "sl(n) level (computation fixed at 2)");

    auto* compute = app.add_subcommand("compute", "compute homology of one knot");
    compute->add_option("--knot", cfg.knot, "catalog knot name");
    compute->add_option("--pd", cfg.pd, "inline PD code");
    compute->add_option("--flavor", cfg.flavor, "unreduced|reduced|equivariant");
    compute->add_flag("--seed-check", cfg.seed_check, "run the bracket Euler-characteristic oracle")
        ->group(""); // hidden

    std::string family_check;
    auto* family = app.add_subcommand("family", "run a twist-family verification");
    family->add_option("check", family_check, "splitting|stab|ladders|s|nonvanishing|pair")
        ->required();
    family->add_option("--base", cfg.knot, "catalog name of the base diagram");
    family->add_option("--pd", cfg.pd, "inline PD code of the base diagram");
    family->add_option("--site", cfg.site, "site index (default 0)");
    family->add_option("--flavor", cfg.flavor, "unreduced|reduced|equivariant");
    family->add_option("--pmax", cfg.p_max, "largest twist parameter");
    family->add_option("--i", cfg.i, "stab: lower index");
    family->add_option("--j", cfg.j, "stab: upper index");
    family->add_option("--rows", cfg.rows, "ladders: number of rows");
    family->add_option("--pair-with", cfg.pair_with, "pair: catalog name of the second family");

    auto* stable = app.add_subcommand("stable", "windowed stable homology H(D_infinity)");
    stable->add_option("--base", cfg.knot, "catalog name of the base diagram");
    stable->add_option("--pd", cfg.pd, "inline PD code");
    stable->add_option("--site", cfg.site, "site index (default 0)");
    stable->add_option("--flavor", cfg.flavor, "unreduced|reduced|equivariant");
    stable->add_option("--window", cfg.window, "homological window A,B")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (compute->parsed())
            return cmd_compute(cfg);
        if (family->parsed())
            return cmd_family(cfg, family_check);
        if (stable->parsed())
            return cmd_stable(cfg);
        std::cerr << "no subcommand\n";
        return 2;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const InternalError& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
}
