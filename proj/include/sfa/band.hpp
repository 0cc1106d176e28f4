#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "sfa/decomposition.hpp"
#include "sfa/signal.hpp"

namespace sfa {

class EmptyIndexSet : public std::invalid_argument {
public:
    EmptyIndexSet() : std::invalid_argument("band: index set is empty") {}
};

class IndexOutOfRange : public std::out_of_range {
public:
    explicit IndexOutOfRange(const std::string& what) : std::out_of_range(what) {}
};

class NonContiguous : public std::invalid_argument {
public:
    NonContiguous() : std::invalid_argument("band: index set must be a contiguous ascending run") {}
};

class MissingMerge : public std::invalid_argument {
public:
    MissingMerge() : std::invalid_argument("band: component carries no merged amplitude pair") {}
};

class CenterMismatch : public std::invalid_argument {
public:
    CenterMismatch() : std::invalid_argument("phase: center frequencies differ") {}
};

class LengthMismatch : public std::invalid_argument {
public:
    LengthMismatch() : std::invalid_argument("phase: series lengths differ") {}
};

class WindowTooLarge : public std::invalid_argument {
public:
    WindowTooLarge() : std::invalid_argument("plv: window exceeds series length") {}
};

// Narrow-band slice of a decomposition. The merge path referred to below
// rewrites the selected components against the single center frequency
// center_omega (radians/sample), yielding the amplitude pair (a_merged,
// b_merged) with samples(n) = a_merged(n)cos(center_omega*n) +
// b_merged(n)sin(center_omega*n).
struct BandComponent {
    std::vector<std::size_t> grid_indices;
    std::vector<double> samples;
    std::vector<double> a_merged;  // empty unless built via a merge
    std::vector<double> b_merged;
    double center_omega = 0.0;
    double sample_rate = 1.0;
    bool has_merge = false;
};

// Instantaneous phase of a band, radians in (-pi, pi]. mask flags samples
// where both merged amplitudes vanish; theta is NaN there.
struct PhaseSeries {
    std::vector<double> theta;
    std::vector<bool> mask;
    double center_omega = 0.0;
};

// Partial reconstruction over an index set, no merge. center_omega is the mean
// grid frequency over the set.
BandComponent extract_band(const Decomposition& d, const std::vector<std::size_t>& indices);

// sum_k |weights(k)| * [a c + b s](n, k); weights must have one entry per grid
// frequency.
Signal weighted_reconstruct(const Decomposition& d, const std::vector<double>& weights);

// Rewrites components {m, m+1} against their midpoint frequency.
BandComponent merge_pair(const Decomposition& d, std::size_t m);

// Rewrites the contiguous run lo..hi against its midpoint frequency via
// nested symmetric pairs (plus the center singleton when the run is odd).
// Even runs center on the half-grid midpoint.
BandComponent merge_band(const Decomposition& d, std::size_t lo, std::size_t hi);

// merge_band over an explicit index list, which must be contiguous ascending.
BandComponent merge_indices(const Decomposition& d, const std::vector<std::size_t>& indices);

// Positive-frequency envelope a_merged - j*b_merged. Rotating it by
// exp(j*center_omega*n) and taking the real part reproduces samples.
std::vector<std::complex<double>> analytic(const BandComponent& bc);

PhaseSeries inst_phase(const BandComponent& bc);

// wrap(theta1 - theta2) into (-pi, pi]. Requires equal lengths and equal
// center frequencies (within 1e-12 radians/sample).
std::vector<double> phase_difference(const PhaseSeries& p1, const PhaseSeries& p2);

// Sliding-window phase-locking value |circular mean of exp(j*delta)| in [0,1].
// Centered window of the given length, truncated at the edges.
std::vector<double> plv(const std::vector<double>& delta, std::size_t window);

// Principal value of an angle in (-pi, pi].
double wrap_angle(double x);

// A measured step between two phase plateaus.
struct PhaseStep {
    double step_radians = 0.0;  // wrapped plateau difference (signed)
    std::size_t n10 = 0;        // last sample at <= 10% of the step
    std::size_t n90 = 0;        // first sample at >= 90% of the step
    std::size_t width = 0;      // n90 - n10
    double midpoint = 0.0;      // (n10 + n90) / 2
};

// Locates a phase step near the hinted sample. Plateau phases are circular
// means over windows of `half` samples placed `guard` samples away from the
// hint on either side; the 10%/90% crossings are searched within
// [hint-half, hint+half). NaN samples are skipped. Returns nothing if either
// crossing is absent or the plateaus coincide.
std::optional<PhaseStep> measure_phase_step(const std::vector<double>& theta, std::size_t hint,
                                            std::size_t half = 8, std::size_t guard = 2);

}  // namespace sfa
