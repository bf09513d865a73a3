#pragma once

#include "mhdci/fields.hpp"

namespace mhdci {

// Right inverses of the tensor divergence (div T)_i = d_j T_ij, built as
// Fourier multipliers.  Both act as zero on the mean mode of the input.
//
// Symmetric flavour: for mean-free v,
//   (R v)^{kl} = d_k Lap^{-1} v^l + d_l Lap^{-1} v^k
//                - (1/2)(delta_kl + d_k d_l Lap^{-1}) div Lap^{-1} v.
// Output is symmetric and traceless, and div(R v) = v.
TensorField inv_divergence_sym(const VectorField& v);

// Skew flavour: for mean-free, divergence-free f,
//   (R_B f)_{ij} = eps_{ijk} (-Lap)^{-1} (curl f)_k.
// Output is skew, and div(R_B f) = f.
TensorField inv_divergence_skew(const VectorField& f);

}  // namespace mhdci
