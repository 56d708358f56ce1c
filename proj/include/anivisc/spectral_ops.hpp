#pragma once

#include <functional>
#include <span>

#include "anivisc/spectral_field.hpp"

namespace anivisc {

// Physical sample at (i1, i2, i3) sits at x = (i1 h, i2 h, i3 h_v).
double grid_x_h(const Grid& g, int i);
double grid_x_v(const Grid& g, int i3);

/// Samples (grid.size() values, grid storage order) -> coefficients; the
/// zero mode is the mean. Throws std::invalid_argument on size mismatch.
SpectralField forward_transform(std::span<const double> samples, const Grid& grid);
RealVec inverse_transform(const SpectralField& f);

/// Evaluates fn(x1, x2, x3) on the grid and transforms.
SpectralField sample(const Grid& grid, const std::function<double(double, double, double)>& fn);

/// Physical values as a complex buffer (imaginary parts are roundoff).
void to_physical(const SpectralField& f, ComplexVec& buf);
/// Consumes a physical buffer; imaginary parts are discarded first, so the
/// result is Hermitian.
SpectralField from_physical(ComplexVec& buf, const Grid& grid);

/// Averages each coefficient with the conjugate of its mirror.
void enforce_hermitian(SpectralField& f);

SpectralField derivative(const SpectralField& f, int axis);
SpectralField horizontal_laplacian(const SpectralField& f);
/// Throws std::domain_error when the xi_h = 0 coefficients carry more than
/// 1e-12 of the field's norm.
SpectralField inverse_horizontal_laplacian(const SpectralField& f);
/// l2 norm of the xi_h = 0 coefficients relative to the whole field (0 for f = 0).
double horizontal_mean_fraction(const SpectralField& f);

/// e^{t Delta_h} f and e^{t Delta} f.
SpectralField heat_h(const SpectralField& f, double t);
SpectralField heat_3d(const SpectralField& f, double t);

SpectralField divergence(const VectorField& v);
SpectralField divergence_h(const SpectralField& v1, const SpectralField& v2);

/// Spectral Leray projector v - k (k.v)/|k|^2 with the same wavenumbers as
/// derivative(), so projected fields have exactly zero divergence().
void leray_project_inplace(VectorField& v);
VelocityState leray_project(const VectorField& v, double t = 0.0);
/// Two-dimensional projector applied on every horizontal slice.
void leray_project_h_inplace(SpectralField& v1, SpectralField& v2);

void dealias_inplace(SpectralField& f);
SpectralField dealias(const SpectralField& f);
bool is_dealiased(const SpectralField& f);

/// Pseudo-spectral product a*b, dealiased unless asked otherwise.
SpectralField product(const SpectralField& a, const SpectralField& b, bool dealiased = true);

/// Zero-pads or truncates the spectrum onto an n_h x n_h x n_v grid with the
/// same stretch; Nyquist coefficients are split or folded so real fields stay real.
SpectralField resample(const SpectralField& f, int n_h, int n_v);

/// [f]_eps: same coefficients on the grid whose vertical period is 2^m
/// times longer, i.e. f(x_h, eps x3) with eps = 2^-m.
SpectralField slowly_varying_embed(const SpectralField& f, int m);
/// Inverse of the embedding: relabels onto the unit-period grid.
SpectralField pull_back(const SpectralField& f);

double l2_norm(const SpectralField& f);
double l2_norm(const VectorField& v);
double l2_norm_sq(const SpectralField& f);
/// Sup norm sampled on a grid refined by `oversample` on every axis.
double max_abs(const SpectralField& f, int oversample = 2);
/// (integral |f|^p)^(1/p) by grid quadrature on the refined grid; p = inf gives max_abs.
double lp_norm(const SpectralField& f, double p, int oversample = 2);
/// sup_{x_h} ||f(x_h, .)||_{L^2_v}, horizontally refined by `oversample`.
double linf_h_l2_v(const SpectralField& f, int oversample = 2);

}  // namespace anivisc
