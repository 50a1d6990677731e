#pragma once

#include <vector>

namespace gee {

//! Dense n x n helpers for pointwise metric algebra (n <= ~10).
//! Matrices are row-major in a flat buffer.

// Gauss-Jordan inverse with partial pivoting; returns false on (near-)singular.
bool invert(const double* a, double* inv, int n);

// All eigenvalues of a symmetric matrix via cyclic Jacobi; ascending order.
void sym_eigenvalues(const double* a, double* eig, int n);

// True if the symmetric matrix minus eps*I admits a Cholesky factorization,
// i.e. its minimum eigenvalue exceeds eps.
bool positive_definite(const double* a, int n, double eps);

}  // namespace gee
