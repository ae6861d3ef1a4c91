// Dense arithmetic kernels: scalar reference implementations plus AVX2
// variants chosen once at runtime.  Everything downstream (tensor
// marginalization, entropy accumulation, simplex row updates) funnels its
// inner loops through these entry points.
#pragma once

#include <cstddef>

namespace macwt::kernels {

// Scalar reference variants.  These define the semantics; the dispatched
// entry points below must agree with them within the documented tolerances
// (elementwise ops exactly, reductions up to reassociation error).
namespace scalar {
double sum(const double* p, std::size_t n);
double dot(const double* a, const double* b, std::size_t n);
void add_inplace(double* dst, const double* src, std::size_t n);
void axpy(double a, const double* x, double* y, std::size_t n);
void scale(double* p, double a, std::size_t n);
// Sum of -p[i]*log2(p[i]) with 0*log 0 = 0.  Inputs must be >= 0.
double entropy_sum(const double* p, std::size_t n);
}  // namespace scalar

// Runtime-dispatched entry points.
double sum(const double* p, std::size_t n);
double dot(const double* a, const double* b, std::size_t n);
void add_inplace(double* dst, const double* src, std::size_t n);
void axpy(double a, const double* x, double* y, std::size_t n);
void scale(double* p, double a, std::size_t n);
double entropy_sum(const double* p, std::size_t n);

// Name of the instruction set the dispatcher selected ("avx2" or "scalar").
const char* active_isa();
// Test hook: route all dispatched calls to the scalar variants.
void force_scalar(bool on);

}  // namespace macwt::kernels
