#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include "doctest.h"
#include "ibs2/basis_io.hpp"
#include "ibs2/fourier.hpp"
#include "ibs2/pswf.hpp"

using namespace ibs2;
namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_SUITE_BEGIN("pswf");

TEST_CASE("retained basis at c = 10") {
    auto nodes = std::make_shared<const PNodeSet>(default_pnodes(5.0));
    PswfBasis basis = build_basis(10.0, 0.9, *nodes);
    CHECK(basis.entries.size() == 17);
    CHECK(std::abs(basis.alpha00) == doctest::Approx(2.0 * kPi / 10.0).epsilon(1e-5));
    CHECK(std::abs(basis.alpha00) >= norm_lower_bound(5.0));

    // retention rule: every |alpha| >= cutoff
    for (const auto& e : basis.entries) CHECK(std::abs(e.alpha) >= basis.cutoff());

    // |alpha| decreasing and chi increasing in n within each (m, l) family
    std::map<std::pair<int, int>, std::pair<double, double>> last;  // (m,l) -> (|alpha|, chi)
    for (const auto& e : basis.entries) {
        const auto key = std::make_pair(e.m, e.l);
        const auto it = last.find(key);
        if (it != last.end()) {
            CHECK(std::abs(e.alpha) <= it->second.first + 1e-12);
            CHECK(e.chi >= it->second.second - 1e-12);
        }
        last[key] = {std::abs(e.alpha), e.chi};
        CHECK(e.residual <= 1e-4 * std::abs(basis.alpha00));
    }

    // node-rule Gram matrix of the tabulated entries
    BasisNodeTable tab = tabulate_basis(std::make_shared<const PswfBasis>(basis), nodes);
    const std::size_t E = basis.entries.size();
    double worst = 0.0;
    for (std::size_t a = 0; a < E; ++a)
        for (std::size_t b = a; b < E; ++b) {
            double g = 0.0;
            for (std::size_t n = 0; n < nodes->size(); ++n)
                g += nodes->w[n] * tab.values[a][n] * tab.values[b][n];
            worst = std::max(worst, std::abs(g - (a == b ? 1.0 : 0.0)));
        }
    CHECK(worst <= 1e-6);
}

TEST_CASE("mode count grows with the bandwidth") {
    auto nodes = std::make_shared<const PNodeSet>(default_pnodes(15.0));
    PswfBasis basis = build_basis(30.0, 0.9, *nodes);
    CHECK(basis.entries.size() == 199);
    CHECK(std::abs(basis.alpha00) == doctest::Approx(2.0 * kPi / 30.0).epsilon(1e-4));
}

TEST_CASE("cos and sin partners share the radial data") {
    auto nodes = std::make_shared<const PNodeSet>(default_pnodes(5.0));
    PswfBasis basis = build_basis(10.0, 0.9, *nodes);
    // for every m >= 1 entry with l = 1 there is an l = 2 twin with equal chi
    for (const auto& e : basis.entries) {
        if (e.m == 0 || e.l != 1) continue;
        bool found = false;
        for (const auto& f : basis.entries)
            if (f.m == e.m && f.n == e.n && f.l == 2) {
                CHECK(f.chi == doctest::Approx(e.chi).epsilon(1e-14));
                CHECK(std::abs(f.alpha) == doctest::Approx(std::abs(e.alpha)).epsilon(1e-14));
                found = true;
            }
        CHECK(found);
    }
}

TEST_CASE("basis JSON round trip is exact") {
    auto nodes = std::make_shared<const PNodeSet>(default_pnodes(5.0));
    PswfBasis basis = build_basis(10.0, 0.9, *nodes);
    const std::string doc = basis_to_json(basis);
    PswfBasis back = basis_from_json(doc, "roundtrip");
    CHECK(back.c == basis.c);
    CHECK(back.alpha_tilde == basis.alpha_tilde);
    CHECK(back.alpha00 == basis.alpha00);
    REQUIRE(back.entries.size() == basis.entries.size());
    for (std::size_t i = 0; i < basis.entries.size(); ++i) {
        const auto& a = basis.entries[i];
        const auto& b = back.entries[i];
        CHECK(a.m == b.m);
        CHECK(a.n == b.n);
        CHECK(a.l == b.l);
        CHECK(a.chi == b.chi);        // bit-exact via shortest-repr doubles
        CHECK(a.alpha == b.alpha);
        CHECK(a.residual == b.residual);
        REQUIRE(a.coeffs.size() == b.coeffs.size());
        for (std::size_t j = 0; j < a.coeffs.size(); ++j) CHECK(a.coeffs[j] == b.coeffs[j]);
    }
    // re-serialization reproduces the document byte for byte
    CHECK(basis_to_json(back) == doc);
    CHECK_THROWS_AS(basis_from_json("{]", "bad"), FormatError);
    CHECK_THROWS_AS(basis_from_json("{}", "empty"), FormatError);
}

TEST_CASE("cache names are scoped by every parameter") {
    const std::string a = basis_cache_name(10.0, 0.9, 13, 52);
    CHECK(a == "basis_c10_at0.9_T13_M52.json");
    CHECK(basis_cache_name(10.0, 0.9, 13, 53) != a);
    CHECK(basis_cache_name(10.0, 0.85, 13, 52) != a);
    CHECK(basis_cache_name(30.0, 0.9, 13, 52) != a);
}

TEST_SUITE_END();
