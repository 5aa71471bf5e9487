/// @file fieldops.hpp
/// @brief Finite-difference operators in cylindrical coordinates with
///        axis-parity handling, and velocity recovery from the stream function.
///
/// All first-derivative stencils are central second order at interior nodes,
/// one-sided second order on the boundary, and use the parity ghost at the
/// axis. Singular 1/r factors go through divide_by_r, a shared kernel whose
/// axis value is the parity-ghost derivative f(dr,j)/dr (the limit the axis
/// expansions guarantee for fields vanishing at r = 0).

#pragma once

#include "axicyl/field.hpp"

namespace axicyl {

enum class AdvectionScheme { Upwind1, Central2 };

/// d/dr; output parity flips (Odd -> Even -> Odd).
ScalarField ddr(const ScalarField& f);

/// d/dz; parity unchanged.
ScalarField ddz(const ScalarField& f);

/// f/r with the axis limit f(dr,j)/dr; caller names the output parity.
ScalarField divide_by_r(const ScalarField& f, Parity out_parity);

/// (1/r)(r f_r)_r + f_zz. Even fields use the regularized axis form
/// 4*(f(dr,j)-f(0,j))/dr^2 + f_zz; Odd fields are pinned to 0 there and the
/// axis row is not evaluated.
ScalarField laplacian_cyl(const ScalarField& f);

/// v_r f_r + v_z f_z with the named scheme.
ScalarField advect(const ScalarField& v_r, const ScalarField& v_z,
                   const ScalarField& f, AdvectionScheme scheme);

/// v_r = -psi_z, v_z = psi_r + psi/r (axis limit 2 psi_r(0,j)).
std::pair<ScalarField, ScalarField> velocity_from_psi(const ScalarField& psi);

/// (curl F)_r = -(F_phi)_z, (curl F)_phi = (F_r)_z - (F_z)_r,
/// (curl F)_z = (F_phi)_r + F_phi/r.
CylVectorField curl_cyl(const CylVectorField& F);

/// (1/r)(r v_r)_r + v_z,z with axis limit 2 (v_r)_r(0,j) + v_z,z.
ScalarField divergence_cyl(const ScalarField& v_r, const ScalarField& v_z);

}  // namespace axicyl
