#include <stdexcept>

#include "thimble/hopf.hpp"

namespace thimble {
namespace {

void check_same_truncation(int a, int b) {
    if (a != b)
        throw std::invalid_argument("hopf: mixed truncation weights");
}

void add_term(HopfElement& e, const Word& u, const GaussRat& c) {
    if (c.is_zero() || total_weight(u) > e.w_max) return;
    auto it = e.terms.find(u);
    if (it == e.terms.end()) {
        e.terms.emplace(u, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) e.terms.erase(it);
}

void add_term(TensorElement& e, const Word& u, const Word& v, const GaussRat& c) {
    if (c.is_zero() || total_weight(u) + total_weight(v) > e.w_max) return;
    auto key = std::make_pair(u, v);
    auto it = e.terms.find(key);
    if (it == e.terms.end()) {
        e.terms.emplace(std::move(key), c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) e.terms.erase(it);
}

void add_term(TripleElement& e, const std::tuple<Word, Word, Word>& k,
              const GaussRat& c) {
    if (c.is_zero()) return;
    const int w = total_weight(std::get<0>(k)) + total_weight(std::get<1>(k)) +
                  total_weight(std::get<2>(k));
    if (w > e.w_max) return;
    auto it = e.terms.find(k);
    if (it == e.terms.end()) {
        e.terms.emplace(k, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) e.terms.erase(it);
}

Word concat_after(const Word& first, const Word& then) {
    Word out = first;
    out.insert(out.end(), then.begin(), then.end());
    return out;
}

// Coproduct of a single letter.
TensorElement letter_coproduct(int w, int w_max) {
    TensorElement t;
    t.w_max = w_max;
    for (int a = 0; a <= w; ++a) {
        const Word left = a > 0 ? Word{a} : Word{};
        const Word right = a < w ? Word{w - a} : Word{};
        add_term(t, left, right, GaussRat(1));
    }
    return t;
}

// Antipode of a single letter: alternating sum over the compositions of w.
HopfElement letter_antipode(int w, int w_max) {
    HopfElement out;
    out.w_max = w_max;
    Word comp;
    auto rec = [&](auto&& self, int rest) -> void {
        if (rest == 0) {
            const GaussRat sign(comp.size() % 2 == 0 ? 1 : -1);
            add_term(out, comp, sign);
            return;
        }
        for (int c = 1; c <= rest; ++c) {
            comp.push_back(c);
            self(self, rest - c);
            comp.pop_back();
        }
    };
    rec(rec, w);
    return out;
}

}  // namespace

int total_weight(const Word& u) {
    int s = 0;
    for (int w : u) s += w;
    return s;
}

HopfElement hopf_unit(int w_max) {
    HopfElement e;
    e.w_max = w_max;
    e.terms.emplace(Word{}, GaussRat(1));
    return e;
}

HopfElement hopf_generator(int w, int w_max) {
    if (w < 1) throw std::invalid_argument("hopf_generator: weight must be positive");
    HopfElement e;
    e.w_max = w_max;
    if (w <= w_max) e.terms.emplace(Word{w}, GaussRat(1));
    return e;
}

HopfElement word_element(const Word& u, int w_max) {
    for (int w : u)
        if (w < 1) throw std::invalid_argument("word_element: weight must be positive");
    HopfElement e;
    e.w_max = w_max;
    if (total_weight(u) <= w_max) e.terms.emplace(u, GaussRat(1));
    return e;
}

bool operator==(const HopfElement& a, const HopfElement& b) {
    return a.w_max == b.w_max && a.terms == b.terms;
}
bool operator==(const TensorElement& a, const TensorElement& b) {
    return a.w_max == b.w_max && a.terms == b.terms;
}
bool operator==(const TripleElement& a, const TripleElement& b) {
    return a.w_max == b.w_max && a.terms == b.terms;
}

HopfElement operator+(const HopfElement& a, const HopfElement& b) {
    check_same_truncation(a.w_max, b.w_max);
    HopfElement out = a;
    for (const auto& [u, c] : b.terms) add_term(out, u, c);
    return out;
}

HopfElement operator-(const HopfElement& a, const HopfElement& b) {
    check_same_truncation(a.w_max, b.w_max);
    HopfElement out = a;
    for (const auto& [u, c] : b.terms) add_term(out, u, -c);
    return out;
}

HopfElement operator*(const GaussRat& c, const HopfElement& a) {
    HopfElement out;
    out.w_max = a.w_max;
    for (const auto& [u, k] : a.terms) add_term(out, u, c * k);
    return out;
}

HopfElement product(const HopfElement& x, const HopfElement& y) {
    check_same_truncation(x.w_max, y.w_max);
    HopfElement out;
    out.w_max = x.w_max;
    for (const auto& [u, cu] : x.terms)
        for (const auto& [v, cv] : y.terms)
            add_term(out, concat_after(v, u), cu * cv);
    return out;
}

TensorElement tensor_product(const TensorElement& x, const TensorElement& y) {
    check_same_truncation(x.w_max, y.w_max);
    TensorElement out;
    out.w_max = x.w_max;
    for (const auto& [pu, cu] : x.terms)
        for (const auto& [pv, cv] : y.terms)
            add_term(out, concat_after(pv.first, pu.first),
                     concat_after(pv.second, pu.second), cu * cv);
    return out;
}

TensorElement coproduct(const HopfElement& x) {
    TensorElement out;
    out.w_max = x.w_max;
    for (const auto& [u, c] : x.terms) {
        TensorElement acc;
        acc.w_max = x.w_max;
        acc.terms.emplace(std::make_pair(Word{}, Word{}), GaussRat(1));
        // The word is the product of its letters with the last letter as the
        // leftmost factor; the homomorphism follows the same order.
        for (int i = static_cast<int>(u.size()) - 1; i >= 0; --i)
            acc = tensor_product(acc, letter_coproduct(u[i], x.w_max));
        for (const auto& [p, k] : acc.terms) add_term(out, p.first, p.second, c * k);
    }
    return out;
}

TripleElement coproduct_left(const TensorElement& t) {
    TripleElement out;
    out.w_max = t.w_max;
    for (const auto& [p, c] : t.terms) {
        HopfElement leg;
        leg.w_max = t.w_max;
        leg.terms.emplace(p.first, GaussRat(1));
        for (const auto& [q, k] : coproduct(leg).terms)
            add_term(out, std::make_tuple(q.first, q.second, p.second), c * k);
    }
    return out;
}

TripleElement coproduct_right(const TensorElement& t) {
    TripleElement out;
    out.w_max = t.w_max;
    for (const auto& [p, c] : t.terms) {
        HopfElement leg;
        leg.w_max = t.w_max;
        leg.terms.emplace(p.second, GaussRat(1));
        for (const auto& [q, k] : coproduct(leg).terms)
            add_term(out, std::make_tuple(p.first, q.first, q.second), c * k);
    }
    return out;
}

GaussRat counit(const HopfElement& x) {
    auto it = x.terms.find(Word{});
    return it == x.terms.end() ? GaussRat() : it->second;
}

HopfElement antipode(const HopfElement& x) {
    HopfElement out;
    out.w_max = x.w_max;
    for (const auto& [u, c] : x.terms) {
        HopfElement acc = hopf_unit(x.w_max);
        for (int w : u) acc = product(acc, letter_antipode(w, x.w_max));
        for (const auto& [v, k] : acc.terms) add_term(out, v, c * k);
    }
    return out;
}

HopfElement stokes_plus(int w_max) {
    if (w_max < 1) throw std::invalid_argument("stokes_plus: w_max must be >= 1");
    HopfElement e = hopf_unit(w_max);
    for (int w = 1; w <= w_max; ++w) e.terms.emplace(Word{w}, GaussRat(1));
    return e;
}

std::vector<HopfElement> log_stokes(int w_max) {
    const HopfElement p = stokes_plus(w_max) - hopf_unit(w_max);
    HopfElement log;
    log.w_max = w_max;
    HopfElement power = hopf_unit(w_max);
    for (int k = 1; k <= w_max; ++k) {
        power = product(power, p);
        const GaussRat c(Rat(k % 2 == 1 ? 1 : -1, k));
        log = log + c * power;
    }
    std::vector<HopfElement> parts(w_max);
    for (int w = 1; w <= w_max; ++w) parts[w - 1].w_max = w_max;
    for (const auto& [u, c] : log.terms) {
        const int w = total_weight(u);
        if (w >= 1) parts[w - 1].terms.emplace(u, c);
    }
    return parts;
}

HopfElement hopf_exp(const HopfElement& x) {
    if (!counit(x).is_zero())
        throw std::invalid_argument("hopf_exp: element must have vanishing counit");
    HopfElement out = hopf_unit(x.w_max);
    HopfElement power = hopf_unit(x.w_max);
    Rat fact(1);
    for (int k = 1; k <= x.w_max; ++k) {
        power = product(power, x);
        fact *= k;
        out = out + GaussRat(Rat(1) / fact) * power;
        if (power.terms.empty()) break;
    }
    return out;
}

IndexCoefficients represent_gamma(const HopfElement& x, int n,
                                  const IndexWindow& w) {
    IndexCoefficients out;
    if (n < w.n_min || n > w.n_max)
        throw std::invalid_argument("represent_gamma: start index outside window");
    for (const auto& [u, c] : x.terms) {
        const int target = n - total_weight(u);
        if (target < w.n_min || target > w.n_max) {
            out.truncated = true;
            continue;
        }
        auto it = out.coeff.find(target);
        if (it == out.coeff.end()) {
            out.coeff.emplace(target, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) out.coeff.erase(it);
        }
    }
    return out;
}

}  // namespace thimble
