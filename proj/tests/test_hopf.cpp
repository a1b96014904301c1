#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "thimble/hopf.hpp"

using namespace thimble;

namespace {

constexpr int W = 6;

HopfElement zero(int w_max) {
    HopfElement z;
    z.w_max = w_max;
    return z;
}

// Convolution S * id (or id * S) evaluated through the coproduct.
HopfElement convolution(const HopfElement& x, bool antipode_first) {
    HopfElement acc = zero(x.w_max);
    for (const auto& [uv, c] : coproduct(x).terms) {
        const HopfElement l = word_element(uv.first, x.w_max);
        const HopfElement r = word_element(uv.second, x.w_max);
        const HopfElement p =
            antipode_first ? product(antipode(l), r) : product(l, antipode(r));
        acc = acc + c * p;
    }
    return acc;
}

HopfElement contract_left(const TensorElement& t) {  // (counit x id)
    HopfElement acc = zero(t.w_max);
    for (const auto& [uv, c] : t.terms)
        if (uv.first.empty()) acc = acc + c * word_element(uv.second, t.w_max);
    return acc;
}

HopfElement contract_right(const TensorElement& t) {  // (id x counit)
    HopfElement acc = zero(t.w_max);
    for (const auto& [uv, c] : t.terms)
        if (uv.second.empty()) acc = acc + c * word_element(uv.first, t.w_max);
    return acc;
}

TensorElement primitive_tensor(const HopfElement& d) {
    TensorElement t;
    t.w_max = d.w_max;
    for (const auto& [u, c] : d.terms) {
        t.terms[{u, Word{}}] += c;
        t.terms[{Word{}, u}] += c;
    }
    return t;
}

}  // namespace

TEST_SUITE("hopf") {

TEST_CASE("words compose in application order") {
    const HopfElement g1 = hopf_generator(1, W);
    const HopfElement g2 = hopf_generator(2, W);
    CHECK(product(g1, g2) == word_element({2, 1}, W));
    CHECK(product(g2, g1) == word_element({1, 2}, W));
    CHECK(product(product(g1, g2), g1) == word_element({1, 2, 1}, W));

    const HopfElement u = hopf_unit(W);
    const HopfElement x = word_element({1, 2}, W);
    CHECK(product(u, x) == x);
    CHECK(product(x, u) == x);

    CHECK(total_weight({1, 2, 3}) == 6);
    CHECK((g1 - g1) == zero(W));
    CHECK((g1 - g1).terms.empty());
}

TEST_CASE("operations reject mixed truncations") {
    CHECK_THROWS_AS(product(hopf_generator(1, 4), hopf_generator(1, 6)),
                    std::invalid_argument);
    CHECK_THROWS_AS(hopf_generator(1, 4) + hopf_generator(1, 6),
                    std::invalid_argument);
}

TEST_CASE("counit picks the empty word") {
    CHECK(counit(hopf_unit(W)) == GaussRat(1));
    CHECK(counit(hopf_generator(1, W)) == GaussRat(0));
    CHECK(counit(stokes_plus(W)) == GaussRat(1));
}

TEST_CASE("coproduct on generators and a squared word") {
    const HopfElement g1 = hopf_generator(1, W);
    const HopfElement g2 = hopf_generator(2, W);

    TensorElement d1;
    d1.w_max = W;
    d1.terms[{Word{1}, Word{}}] = GaussRat(1);
    d1.terms[{Word{}, Word{1}}] = GaussRat(1);
    CHECK(coproduct(g1) == d1);

    TensorElement d2;
    d2.w_max = W;
    d2.terms[{Word{2}, Word{}}] = GaussRat(1);
    d2.terms[{Word{}, Word{2}}] = GaussRat(1);
    d2.terms[{Word{1}, Word{1}}] = GaussRat(1);
    CHECK(coproduct(g2) == d2);

    TensorElement d11;
    d11.w_max = W;
    d11.terms[{Word{1, 1}, Word{}}] = GaussRat(1);
    d11.terms[{Word{1}, Word{1}}] = GaussRat(2);
    d11.terms[{Word{}, Word{1, 1}}] = GaussRat(1);
    CHECK(coproduct(word_element({1, 1}, W)) == d11);
}

TEST_CASE("coassociativity and the counit axioms") {
    const HopfElement samples[] = {
        stokes_plus(W),
        hopf_generator(1, W) + GaussRat(2) * hopf_generator(2, W) +
            word_element({1, 2}, W),
        word_element({2, 1, 3}, W),
    };
    for (const HopfElement& x : samples) {
        const TensorElement d = coproduct(x);
        CHECK(coproduct_left(d) == coproduct_right(d));
        CHECK(contract_left(d) == x);
        CHECK(contract_right(d) == x);
    }
}

TEST_CASE("antipode on small generators") {
    const HopfElement g1 = hopf_generator(1, W);
    const HopfElement g2 = hopf_generator(2, W);
    CHECK(antipode(g1) == GaussRat(-1) * g1);
    CHECK(antipode(g2) == (GaussRat(-1) * g2 + word_element({1, 1}, W)));
}

TEST_CASE("antipode is the convolution inverse of the identity") {
    std::vector<HopfElement> samples;
    for (int w = 1; w <= W; ++w) samples.push_back(hopf_generator(w, W));
    samples.push_back(word_element({1, 2}, W));
    samples.push_back(word_element({2, 2, 1}, W));
    samples.push_back(stokes_plus(W));
    for (const HopfElement& x : samples) {
        const HopfElement want = counit(x) * hopf_unit(W);
        CHECK(convolution(x, true) == want);
        CHECK(convolution(x, false) == want);
    }
}

TEST_CASE("the Stokes element is group-like") {
    const HopfElement s = stokes_plus(W);
    TensorElement want;
    want.w_max = W;
    for (const auto& [u, cu] : s.terms)
        for (const auto& [v, cv] : s.terms)
            if (total_weight(u) + total_weight(v) <= W)
                want.terms[{u, v}] += cu * cv;
    CHECK(coproduct(s) == want);

    const HopfElement inv = antipode(s);
    CHECK(product(inv, s) == hopf_unit(W));
    CHECK(product(s, inv) == hopf_unit(W));
}

TEST_CASE("alien derivations from the logarithm") {
    const auto ds = log_stokes(W);
    REQUIRE(ds.size() == static_cast<std::size_t>(W));

    CHECK(ds[0] == hopf_generator(1, W));

    const GaussRat half(Rat(1, 2));
    const HopfElement want2 =
        hopf_generator(2, W) - half * word_element({1, 1}, W);
    CHECK(ds[1] == want2);

    const HopfElement want3 =
        hopf_generator(3, W) -
        half * (word_element({1, 2}, W) + word_element({2, 1}, W)) +
        GaussRat(Rat(1, 3)) * word_element({1, 1, 1}, W);
    CHECK(ds[2] == want3);

    for (const HopfElement& d : ds) CHECK(coproduct(d) == primitive_tensor(d));

    HopfElement sum = zero(W);
    for (const HopfElement& d : ds) sum = sum + d;
    CHECK(hopf_exp(sum) == stokes_plus(W));
}

TEST_CASE("tower representation shifts the index") {
    const IndexWindow w{-5, 2};
    const auto ds = log_stokes(W);
    for (int k = 1; k <= W; ++k) {
        const IndexCoefficients ic = represent_gamma(ds[k - 1], 2, w);
        CHECK_FALSE(ic.truncated);
        REQUIRE(ic.coeff.size() == 1);
        CHECK(ic.coeff.count(2 - k) == 1);
        CHECK(ic.coeff.at(2 - k) == GaussRat(Rat(1, k)));
    }

    const IndexCoefficients lat = represent_gamma(antipode(stokes_plus(W)), 2, w);
    CHECK_FALSE(lat.truncated);
    REQUIRE(lat.coeff.size() == 2);
    CHECK(lat.coeff.at(2) == GaussRat(1));
    CHECK(lat.coeff.at(1) == GaussRat(-1));

    const IndexCoefficients trunc =
        represent_gamma(hopf_generator(3, W), -1, IndexWindow{-2, 2});
    CHECK(trunc.truncated);
    CHECK(trunc.coeff.empty());

    CHECK_THROWS_AS(represent_gamma(hopf_generator(1, W), 5, IndexWindow{-2, 2}),
                    std::invalid_argument);
}

}  // TEST_SUITE
