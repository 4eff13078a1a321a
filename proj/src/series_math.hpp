#pragma once

// Internal numerics shared by the individual- and equivalent-machine analyses.

#include <cstddef>
#include <span>
#include <vector>

namespace equistab::detail {

/// Zero of the chord through (t0, v0) and (t1, v1).
double crossing_time(double t0, double t1, double v0, double v1);

/// Linear interpolation of `values` at time t inside [times[k], times[k+1]].
double interpolate(std::span<const double> times, std::span<const double> values, std::size_t k, double t);

/**
 * Cumulative integral of g(t) = −f(t)·ω(t) (i.e. ∫ −f dδ along the path) from
 * sample `from` to every later sample, using per-interval cubic interpolation on
 * a four-point stencil kept inside [from, last]. Entry j holds the integral up
 * to sample from + j.
 */
std::vector<double> cumulative_decel_area(std::span<const double> times, std::span<const double> f,
                                          std::span<const double> omega, std::size_t from);

/// Integral of −f·ω over [times[k], t] with the same interpolant; t within interval k.
double partial_decel_area(std::span<const double> times, std::span<const double> f,
                          std::span<const double> omega, std::size_t from, std::size_t k, double t);

/**
 * Deceleration area still available beyond a return point (δ_r, f_r) with f_r < 0
 * (orientation already applied). A power-angle curve a + b sin δ + c cos δ through
 * the return point is fitted by least squares to the Kimbark-curve samples in the
 * upper `window` fraction of the swing, and its area up to the first zero past δ_r
 * is returned. +∞ when the fitted curve never recovers to zero; 0 when it is
 * already non-negative at δ_r.
 */
double extrapolated_reserve(std::span<const double> delta, std::span<const double> f, double delta_start,
                            double delta_return, double f_return, double window);

}  // namespace equistab::detail
