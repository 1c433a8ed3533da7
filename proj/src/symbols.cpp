#include "dirops/symbols.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace dirops {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

double unit_double(std::uint64_t& state) {
    return static_cast<double>(splitmix64(state) >> 11) * 0x1.0p-53;
}

// sigma log-uniform in (1e-4, 20], t uniform in [-50, 50]
cplx sample_point(std::uint64_t& state) {
    const double lo = std::log(1e-4), hi = std::log(20.0);
    const double sigma = std::exp(lo + (hi - lo) * unit_double(state));
    const double t = -50.0 + 100.0 * unit_double(state);
    return {sigma, t};
}

} // namespace

GeneralSymbol GeneralSymbol::from_affine(const AffineSymbol& a) {
    DirichletPolynomial phi = DirichletPolynomial::zero(2);
    phi.set_coeff(1, a.c1);
    phi.set_coeff(2, a.c2);
    return GeneralSymbol{0, std::move(phi)};
}

cplx phi_at_infinity(const GeneralSymbol& sym) {
    if (sym.c0 >= 1)
        throw std::invalid_argument("phi_at_infinity: undefined for characteristic >= 1");
    return sym.phi.coeff(1);
}

cplx phi_at_infinity(const AffineSymbol& sym) { return sym.c1; }

AffineVerdict validate_affine(cplx c1, cplx c2) {
    const double gap = c1.real() - 0.5 - std::abs(c2);
    if (gap > 1e-12) return AffineVerdict::StrictInterior;
    if (std::abs(gap) <= 1e-12) return AffineVerdict::Boundary;
    return AffineVerdict::Invalid;
}

AffineVerdict validate_affine(const AffineSymbol& sym) {
    return validate_affine(sym.c1, sym.c2);
}

ClassificationEvidence classify_sampled(const GeneralSymbol& sym, int sample_count,
                                        std::uint64_t seed) {
    if (sample_count < 1)
        throw std::invalid_argument("classify_sampled: sample_count must be >= 1");

    ClassificationEvidence ev;
    ev.samples = sample_count;
    ev.seed = seed;
    ev.min_re = std::numeric_limits<double>::infinity();

    const double threshold = sym.c0 == 0 ? 0.5 : 0.0;
    std::uint64_t state = seed ^ 0x6C62272E07BB0142ull;
    for (int i = 0; i < sample_count; ++i) {
        const cplx s = sample_point(state);
        const cplx value = sym.at(s);
        ev.min_re = std::min(ev.min_re, value.real());
        if (!ev.witness && value.real() <= threshold) {
            ev.witness = s;
            ev.witness_value = value;
        }
    }
    if (ev.witness)
        ev.verdict = SymbolClassVerdict::CounterexampleFound;
    else
        ev.verdict = sym.c0 == 0 ? SymbolClassVerdict::ZeroCharEvidence
                                 : SymbolClassVerdict::PositiveCharEvidence;
    return ev;
}

HalfplaneCheck strict_halfplane_check(const GeneralSymbol& sym, double epsilon,
                                      int sample_count, std::uint64_t seed) {
    if (!(epsilon > 0.0))
        throw std::invalid_argument("strict_halfplane_check: epsilon must be positive");
    if (sample_count < 1)
        throw std::invalid_argument("strict_halfplane_check: sample_count must be >= 1");

    HalfplaneCheck out;
    out.sampled_min_re = std::numeric_limits<double>::infinity();
    std::uint64_t state = seed ^ 0x6C62272E07BB0142ull;
    for (int i = 0; i < sample_count; ++i) {
        const cplx value = sym.at(sample_point(state));
        out.sampled_min_re = std::min(out.sampled_min_re, value.real());
    }
    out.sampled_pass = out.sampled_min_re >= 0.5 + epsilon;
    return out;
}

HalfplaneCheck strict_halfplane_check(const AffineSymbol& sym, double epsilon,
                                      int sample_count, std::uint64_t seed) {
    HalfplaneCheck out =
        strict_halfplane_check(GeneralSymbol::from_affine(sym), epsilon, sample_count, seed);
    // inf over C_0 of Re Phi: |2^{-s}| sweeps (0,1) on C_0 and the phase is
    // free, so the infimum is Re(c1) - |c2| (not attained).
    out.exact_infimum = sym.c1.real() - std::abs(sym.c2);
    out.exact_pass = *out.exact_infimum >= 0.5 + epsilon;
    return out;
}

namespace {

std::vector<double> parse_number_list(const std::string& text, char sep) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, sep)) {
        if (item.empty())
            throw std::invalid_argument("parse_symbol: empty numeric field");
        std::size_t used = 0;
        double v;
        try {
            v = std::stod(item, &used);
        } catch (const std::exception&) {
            throw std::invalid_argument("parse_symbol: bad number '" + item + "'");
        }
        if (used != item.size())
            throw std::invalid_argument("parse_symbol: trailing junk in '" + item + "'");
        out.push_back(v);
    }
    return out;
}

} // namespace

SymbolVariant parse_symbol(const std::string& text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos)
        throw std::invalid_argument("parse_symbol: expected '<kind>:<params>'");
    const std::string kind = text.substr(0, colon);
    const std::string rest = text.substr(colon + 1);

    if (kind == "affine") {
        const auto v = parse_number_list(rest, ',');
        if (v.size() != 4)
            throw std::invalid_argument("parse_symbol: affine takes c1_re,c1_im,c2_re,c2_im");
        return AffineSymbol{{v[0], v[1]}, {v[2], v[3]}};
    }
    if (kind == "translate") {
        const auto v = parse_number_list(rest, ',');
        if (v.size() != 2)
            throw std::invalid_argument("parse_symbol: translate takes c1_re,c1_im");
        return TranslationSymbol{{v[0], v[1]}};
    }
    if (kind == "general") {
        std::stringstream ss(rest);
        std::string field;
        if (!std::getline(ss, field, ';'))
            throw std::invalid_argument("parse_symbol: general takes c0;re,im;re,im;...");
        const auto c0v = parse_number_list(field, ',');
        if (c0v.size() != 1 || c0v[0] < 0 || c0v[0] != std::floor(c0v[0]))
            throw std::invalid_argument("parse_symbol: characteristic must be a nonnegative integer");
        std::vector<cplx> coeffs;
        while (std::getline(ss, field, ';')) {
            const auto v = parse_number_list(field, ',');
            if (v.size() != 2)
                throw std::invalid_argument("parse_symbol: coefficients are re,im pairs");
            coeffs.push_back({v[0], v[1]});
        }
        if (coeffs.empty()) coeffs.push_back({});
        return GeneralSymbol{static_cast<int>(c0v[0]), DirichletPolynomial(std::move(coeffs))};
    }
    throw std::invalid_argument("parse_symbol: unknown kind '" + kind + "'");
}

std::string format_symbol(const SymbolVariant& sym) {
    char buf[160];
    if (const auto* a = std::get_if<AffineSymbol>(&sym)) {
        std::snprintf(buf, sizeof buf, "affine:%.17g,%.17g,%.17g,%.17g", a->c1.real(),
                      a->c1.imag(), a->c2.real(), a->c2.imag());
        return buf;
    }
    if (const auto* t = std::get_if<TranslationSymbol>(&sym)) {
        std::snprintf(buf, sizeof buf, "translate:%.17g,%.17g", t->c1.real(), t->c1.imag());
        return buf;
    }
    const auto& g = std::get<GeneralSymbol>(sym);
    std::string out = "general:" + std::to_string(g.c0);
    for (std::size_t n = 1; n <= g.phi.length(); ++n) {
        std::snprintf(buf, sizeof buf, ";%.17g,%.17g", g.phi.coeff(n).real(),
                      g.phi.coeff(n).imag());
        out += buf;
    }
    return out;
}

} // namespace dirops
