#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>

#include "dirops/dirichlet.hpp"

namespace dirops {

// Phi(s) = c1 + c2 2^{-s}. Phi(+inf) = c1. Bounded mode (strict interior)
// means Re(c1) > 1/2 + |c2|.
struct AffineSymbol {
    cplx c1{};
    cplx c2{};

    cplx at(cplx s) const { return c1 + c2 * std::exp(-s * std::log(2.0)); }
    bool constant() const { return c2 == cplx{}; }
};

// Phi(s) = s + c1 (characteristic 1, phi reduced to the constant c1).
struct TranslationSymbol {
    cplx c1{};

    cplx at(cplx s) const { return s + c1; }
};

// Gordon-Hedenmalm form Phi(s) = c0 s + phi(s), phi(s) = sum c_n n^{-s},
// with nonnegative integer characteristic c0.
struct GeneralSymbol {
    int c0 = 0;
    DirichletPolynomial phi;

    cplx at(cplx s) const { return static_cast<double>(c0) * s + eval_poly(phi, HalfPlanePoint(s)); }
    static GeneralSymbol from_affine(const AffineSymbol& a);
};

// Phi(+inf) for characteristic-zero symbols: the n = 1 coefficient of phi.
// Rejects c0 >= 1 (Phi(+inf) undefined).
cplx phi_at_infinity(const GeneralSymbol& sym);
cplx phi_at_infinity(const AffineSymbol& sym);

enum class AffineVerdict { StrictInterior, Boundary, Invalid };

// StrictInterior: Re(c1) > 1/2 + |c2|; Boundary: equality within 1e-12.
// Matrix and spectrum routines require StrictInterior.
AffineVerdict validate_affine(cplx c1, cplx c2);
AffineVerdict validate_affine(const AffineSymbol& sym);

enum class SymbolClassVerdict {
    ZeroCharEvidence,     // all samples of phi landed in C_{1/2}
    PositiveCharEvidence, // c0 >= 1 and all samples of Phi landed in C_0
    CounterexampleFound,
};

// Sampled classification evidence. Labeled evidence from a seeded point
// set, not a proof; deterministic for a fixed seed.
struct ClassificationEvidence {
    SymbolClassVerdict verdict;
    double min_re = 0.0;          // min over samples of Re(Phi)
    std::optional<cplx> witness;  // first sample violating the class condition
    std::optional<cplx> witness_value;
    int samples = 0;
    std::uint64_t seed = 0;
};

// Samples Phi at pseudo-random points of C_0 (sigma log-uniform in
// (1e-4, 20], t uniform in [-50, 50]).
ClassificationEvidence classify_sampled(const GeneralSymbol& sym, int sample_count,
                                        std::uint64_t seed);

struct HalfplaneCheck {
    bool sampled_pass = false;
    double sampled_min_re = 0.0;
    std::optional<bool> exact_pass;    // affine only
    std::optional<double> exact_infimum; // inf of Re(Phi) over C_0 = Re(c1) - |c2|
};

// Verifies Re(Phi) >= 1/2 + epsilon on C_0 by sampling; for affine symbols
// also reports the exact verdict from the infimum Re(c1) - |c2|.
HalfplaneCheck strict_halfplane_check(const GeneralSymbol& sym, double epsilon,
                                      int sample_count, std::uint64_t seed);
HalfplaneCheck strict_halfplane_check(const AffineSymbol& sym, double epsilon,
                                      int sample_count, std::uint64_t seed);

// CLI symbol literals:
//   affine:c1_re,c1_im,c2_re,c2_im
//   translate:c1_re,c1_im
//   general:c0;c_1_re,c_1_im;c_2_re,c_2_im;...
using SymbolVariant = std::variant<AffineSymbol, TranslationSymbol, GeneralSymbol>;
SymbolVariant parse_symbol(const std::string& text);
std::string format_symbol(const SymbolVariant& sym);

} // namespace dirops
