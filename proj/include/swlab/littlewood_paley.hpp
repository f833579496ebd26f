#pragma once

#include "swlab/bump.hpp"
#include "swlab/field.hpp"

#include <vector>

namespace swlab {

/// Spectral symbol of the block j at |xi| = rho.
double block_symbol(double rho, int j);
/// Symbol of S_j = sum_{j_min <= k <= j-1} Delta_k, telescoped: chi(2^{-j} rho) - chi(2^{-j_min} rho).
double low_pass_symbol(double rho, int j, int j_min);

/// Delta_j f; rejects j outside [j_min, j_max] of the field's grid.
Field2D dyadic_block(const Field2D& f, int j);
VectorField2D dyadic_block(const VectorField2D& u, int j);

/// S_j f = sum of blocks j_min <= k <= j-1; j may range over [j_min, j_max + 1].
Field2D low_freq_cutoff(const Field2D& f, int j);

/// All blocks of the resolved band, index 0 <-> j_min. Spectral.
std::vector<Field2D> dyadic_decomposition(const Field2D& f);

/// Bony split uv = T_u v + T_v u + R(u, v).
struct BonyParts {
    Field2D low_high;   ///< T_f g = sum_j S_{j-1} f Delta_j g
    Field2D high_low;   ///< T_g f = sum_j S_{j-1} g Delta_j f
    Field2D remainder;  ///< R(f, g) = sum_j Delta_j f tilde-Delta_j g
};

/// Rejects inputs whose product would alias (content beyond the dealias cutoff).
BonyParts bony_parts(const Field2D& f, const Field2D& g);

}  // namespace swlab
