/// @file elliptic.hpp
/// @brief Stream-function boundary-value solves:
///        -lap(psi) + psi/r^2 = omega_phi, psi|_S = 0   (PsiForm)
///        -lap(psi1) - (2/r) psi1_r = Gamma, psi1|_S = 0 (Psi1Form)
///
/// PsiForm is solved by Jacobi-preconditioned conjugate gradients; the
/// discrete operator is assembled in the r-weighted inner product, where it
/// is exactly symmetric positive definite. Psi1Form defaults to the
/// substitution route psi = r*psi1 (reusing the SPD solve); a direct route
/// (CG in the r^3-weighted product, regularized axis row) is kept as an
/// independent cross-check.

#pragma once

#include "axicyl/field.hpp"

#include <stdexcept>
#include <vector>

namespace axicyl {

struct EllipticSolution {
    ScalarField field;
    int iterations = 0;
    double final_residual = 0.0;  ///< relative weighted-L2 residual
};

/// Non-convergence within max_iterations.
struct EllipticError : std::runtime_error {
    EllipticError(const std::string& what, std::vector<double> history)
        : std::runtime_error(what), residual_history(std::move(history)) {}
    std::vector<double> residual_history;
};

inline constexpr double kEllipticDefaultTol = 1e-10;

/// Default iteration cap 50*(nr+nz).
int default_max_iterations(const Grid& g);

EllipticSolution solve_psi(const ScalarField& omega_phi,
                           double tol = kEllipticDefaultTol, int max_iter = -1);

enum class Psi1Route { Substitution, Direct };

EllipticSolution solve_psi1(const ScalarField& gamma,
                            double tol = kEllipticDefaultTol,
                            Psi1Route route = Psi1Route::Substitution,
                            int max_iter = -1);

/// -lap(psi) + psi/r^2 at interior nodes (zero on boundary rows); equals the
/// CG operator, and laplacian_cyl at interior nodes.
ScalarField apply_psi_operator(const ScalarField& psi);

/// -lap(psi1) - (2/r) psi1_r with the regularized axis row
/// -(4 psi1_rr + psi1_zz); zero on boundary rows.
ScalarField apply_psi1_operator(const ScalarField& psi1);

}  // namespace axicyl
