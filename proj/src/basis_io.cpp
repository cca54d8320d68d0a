#include "ibs2/basis_io.hpp"

#include <cstdio>

#include "json.hpp"

#include "ibs2/errors.hpp"

namespace ibs2 {

using nlohmann::json;

std::string basis_to_json(const PswfBasis& basis) {
    json entries = json::array();
    for (const PswfEntry& e : basis.entries) {
        entries.push_back({{"m", e.m},
                           {"n", e.n},
                           {"l", e.l},
                           {"chi", e.chi},
                           {"alpha", {e.alpha.real(), e.alpha.imag()}},
                           {"residual", e.residual},
                           {"coeffs", e.coeffs}});
    }
    const json root = {{"c", basis.c},
                       {"alpha_tilde", basis.alpha_tilde},
                       {"alpha00", {basis.alpha00.real(), basis.alpha00.imag()}},
                       {"entries", entries}};
    return root.dump(1);
}

PswfBasis basis_from_json(const std::string& text, const std::string& origin) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw FormatError(origin + ": invalid JSON: " + e.what());
    }
    try {
        PswfBasis b;
        b.c = root.at("c").get<double>();
        b.alpha_tilde = root.at("alpha_tilde").get<double>();
        b.alpha00 = cplx(root.at("alpha00").at(0).get<double>(),
                         root.at("alpha00").at(1).get<double>());
        for (const json& je : root.at("entries")) {
            PswfEntry e;
            e.m = je.at("m").get<int>();
            e.n = je.at("n").get<int>();
            e.l = je.at("l").get<int>();
            e.chi = je.at("chi").get<double>();
            e.alpha = cplx(je.at("alpha").at(0).get<double>(),
                           je.at("alpha").at(1).get<double>());
            e.residual = je.at("residual").get<double>();
            e.coeffs = je.at("coeffs").get<std::vector<double>>();
            b.entries.push_back(std::move(e));
        }
        return b;
    } catch (const json::exception& e) {
        throw FormatError(origin + ": malformed basis document: " + e.what());
    }
}

std::string basis_cache_name(double c, double alpha_tilde, int T, int M) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "basis_c%.9g_at%.9g_T%d_M%d.json", c, alpha_tilde, T, M);
    return buf;
}

}  // namespace ibs2
