// gen_catalog.cpp -- regenerates data/catalog.json.
//
// Every non-tabulated diagram is produced by twist surgery from a smaller
// fixture, so the whole catalog is reproducible from this file.  Knots whose
// Rolfsen-style names depend on chirality carry the convention notes in
// docs/formats.md.

#include <fstream>
#include <iostream>

#include "json.hpp"

#include "twistkh/diagram.hpp"
#include "twistkh/kauffman.hpp"

using namespace twistkh;
using Json = nlohmann::ordered_json;

namespace {

Json entry(const std::string& name, const PlanarDiagram& d, std::optional<int> basepoint,
           const std::vector<TwistSite>& sites) {
    Json e;
    e["name"] = name;
    e["pd"] = pd_to_string(d);
    if (basepoint)
        e["basepoint"] = *basepoint;
    if (!sites.empty()) {
        Json arr = Json::array();
        for (auto& s : sites) {
            Json site;
            site["edges"] = {s.e1, s.e2};
            arr.push_back(site);
        }
        e["sites"] = arr;
    }
    return e;
}

PlanarDiagram torus_2m_lh(int m) {
    // sigma_1^m closure pattern, left-handed (all crossings negative).
    std::string pd = "PD[";
    for (int i = 1; i <= m; ++i) {
        auto wrap = [&](int x) { return (x - 1) % (2 * m) + 1; };
        pd += "X(" + std::to_string(2 * i - 1) + "," + std::to_string(wrap(2 * i + 2)) + "," +
              std::to_string(2 * i) + "," + std::to_string(wrap(2 * i + 3)) + ")";
        pd += (i < m) ? ", " : "]";
    }
    return parse_pd(pd);
}

} // namespace

int main(int argc, char** argv) {
    std::string out_path = argc > 1 ? argv[1] : "data/catalog.json";
    Json catalog = Json::array();

    PlanarDiagram unknot = parse_pd("PD[]");
    catalog.push_back(entry("unknot", unknot, 1, {}));
    // Fold site: twisting the doubled strand keeps the unknot for every p.
    catalog.push_back(entry("trivial", unknot, std::nullopt, {{1, 1}}));

    // The figure-eight with its positive clasp removed; inserting +1 at the
    // site gives 4_1, -1 gives the left trefoil.  Doubles as the base of
    // the nonvanishing family, hence the alias below.
    PlanarDiagram u_fig8 = parse_pd("PD[X(1,4,2,1), X(3,2,4,3)]");
    u_fig8.sites.push_back({1, 3});
    catalog.push_back(entry("U_fig8", u_fig8, 2, u_fig8.sites));
    catalog.push_back(entry("U_lefttref", u_fig8, 2, u_fig8.sites));

    // Mirror base: +1 gives the right trefoil, then 5_2-type twist knots.
    PlanarDiagram u_rtref = parse_pd("PD[X(4,2,1,1), X(2,4,3,3)]");
    u_rtref.sites.push_back({1, 3});
    catalog.push_back(entry("U_righttref", u_rtref, 2, u_rtref.sites));

    PlanarDiagram tref_lh = torus_2m_lh(3);
    catalog.push_back(entry("trefoil_lh", tref_lh, 1, {}));
    catalog.push_back(entry("trefoil_rh", mirror(tref_lh), 1, {}));

    PlanarDiagram fig8 = parse_pd("PD[X(4,2,5,1), X(8,6,1,5), X(6,3,7,4), X(2,7,3,8)]");
    catalog.push_back(entry("fig8", fig8, 1, {}));

    catalog.push_back(entry("torus_2_5", torus_2m_lh(5), 1, {}));
    catalog.push_back(entry("torus_2_7", torus_2m_lh(7), 1, {}));
    catalog.push_back(entry("torus_2_9", torus_2m_lh(9), 1, {}));

    // Twist-knot ladders generated by the two clasp bases.
    auto family_member = [&](const PlanarDiagram& base, int p) {
        return insert_twists(base, 0, p);
    };
    auto pick_basepoint = [](const PlanarDiagram& d) -> std::optional<int> {
        for (int e = 1; e <= d.n_edges; ++e) {
            bool on_site = false;
            for (auto& s : d.sites)
                if (s.e1 == e || s.e2 == e)
                    on_site = true;
            if (!on_site)
                return e;
        }
        return std::nullopt;
    };
    {
        PlanarDiagram b = u_fig8;
        PlanarDiagram k2 = family_member(b, 2);
        PlanarDiagram k3 = family_member(b, 3);
        PlanarDiagram k4 = family_member(b, 4);
        catalog.push_back(entry("twist_6_1", k2, pick_basepoint(k2), k2.sites));
        catalog.push_back(entry("twist_8_1", k3, pick_basepoint(k3), k3.sites));
        catalog.push_back(entry("twist_10_1", k4, pick_basepoint(k4), k4.sites));
    }
    {
        PlanarDiagram b = u_rtref;
        PlanarDiagram k2 = family_member(b, 2);
        PlanarDiagram k3 = family_member(b, 3);
        catalog.push_back(entry("twist_5_2", k2, pick_basepoint(k2), k2.sites));
        catalog.push_back(entry("twist_7_2", k3, pick_basepoint(k3), k3.sites));
    }

    std::ofstream out(out_path);
    out << catalog.dump(2) << "\n";
    std::cout << "wrote " << out_path << " with " << catalog.size() << " entries\n";
    return 0;
}
