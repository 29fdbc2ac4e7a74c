// report.cpp -- JSON and table rendering.

#include "twistkh/report.hpp"

#include <iomanip>
#include <sstream>

#include "json.hpp"

namespace twistkh {

namespace {

using Json = nlohmann::ordered_json;

Json groups_json(const BigradedHomology& h) {
    // One entry per bidegree carrying either free rank or torsion.
    std::map<std::pair<int, int>, std::pair<int, std::vector<int>>> merged;
    for (auto& [hq, r] : h.free_ranks)
        merged[hq].first = r;
    for (auto& [hqk, c] : h.torsion) {
        auto& entry = merged[{std::get<0>(hqk), std::get<1>(hqk)}];
        for (int i = 0; i < c; ++i)
            entry.second.push_back(std::get<2>(hqk));
    }
    Json arr = Json::array();
    for (auto& [hq, fr] : merged) {
        Json g;
        g["h"] = hq.first;
        g["q"] = hq.second;
        g["free"] = fr.first;
        g["torsion"] = fr.second;
        arr.push_back(g);
    }
    return arr;
}

} // namespace

std::string homology_json(const BigradedHomology& h, Flavor flavor, const std::string& name) {
    Json j;
    j["command"] = "compute";
    if (!name.empty())
        j["name"] = name;
    j["flavor"] = flavor_to_string(flavor);
    j["groups"] = groups_json(h);
    j["poincare"] = h.poincare();
    return j.dump(2);
}

std::string homology_table(const BigradedHomology& h, Flavor flavor, const std::string& name) {
    std::ostringstream os;
    os << (name.empty() ? "homology" : name) << " (" << flavor_to_string(flavor) << ")\n";
    os << "  h    q  free  torsion\n";
    std::map<std::pair<int, int>, std::pair<int, std::vector<int>>> merged;
    for (auto& [hq, r] : h.free_ranks)
        merged[hq].first = r;
    for (auto& [hqk, c] : h.torsion)
        for (int i = 0; i < c; ++i)
            merged[{std::get<0>(hqk), std::get<1>(hqk)}].second.push_back(std::get<2>(hqk));
    for (auto& [hq, fr] : merged) {
        os << std::setw(3) << hq.first << " " << std::setw(4) << hq.second << " " << std::setw(5)
           << fr.first << "  ";
        for (std::size_t i = 0; i < fr.second.size(); ++i)
            os << (i ? "," : "") << "a^" << fr.second[i];
        os << "\n";
    }
    os << "poincare: " << h.poincare() << "\n";
    return os.str();
}

std::string check_report_json(const CheckReport& rep, const std::string& family_name) {
    Json j;
    j["command"] = "family";
    j["family"] = family_name;
    j["check"] = rep.name;
    j["pass"] = rep.pass;
    j["vacuous"] = rep.vacuous;
    j["details"] = rep.details;
    Json data = Json::object();
    for (auto& [k, v] : rep.data)
        data[k] = v;
    j["data"] = data;
    return j.dump(2);
}

std::string check_report_table(const CheckReport& rep, const std::string& family_name) {
    std::ostringstream os;
    os << "family " << family_name << " check " << rep.name << ": "
       << (rep.pass ? (rep.vacuous ? "PASS (vacuous)" : "PASS") : "FAIL") << "\n";
    for (auto& line : rep.details)
        os << "  " << line << "\n";
    return os.str();
}

std::string stable_json(const StableHomology& sh, Flavor flavor, const std::string& name) {
    Json j;
    j["command"] = "stable";
    if (!name.empty())
        j["name"] = name;
    j["flavor"] = flavor_to_string(flavor);
    j["i_used"] = sh.i_used;
    j["certified_up_to"] = sh.certified_up_to;
    j["groups"] = groups_json(sh.groups);
    j["poincare"] = sh.groups.poincare();
    return j.dump(2);
}

std::string stable_table(const StableHomology& sh, Flavor flavor, const std::string& name) {
    std::ostringstream os;
    os << "stable homology" << (name.empty() ? "" : " of " + name) << " (computed at i = " << sh.i_used
       << ", certified for h <= " << sh.certified_up_to << ")\n";
    os << homology_table(sh.groups, flavor, "window");
    return os.str();
}

} // namespace twistkh
