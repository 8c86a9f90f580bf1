#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "spantree/crossings.hpp"
#include "spantree/estimate.hpp"
#include "spantree/rng.hpp"

namespace spantree {

/* Per-sample disjoint-traversal counts of nested shells around one center:
 * counts[j][i] is the count for aspect j in sample i.  One configuration
 * serves every aspect and every multiplicity, so containment in k and
 * monotonicity across nested shells are exact, not statistical. */
struct TraversalMatrix {
    Model model = Model::Ust;
    double r = 0.0;
    double delta = 0.0;
    std::vector<double> aspects;          // ascending
    std::vector<std::vector<int>> counts; // [aspect][sample]
    std::int64_t n_samples = 0;
};

/* Samples configurations on D(r, max_aspect * r) with free inner / wired
 * outer sides (UST, MST, EST trees; Bernoulli takes the half-density edge
 * set) and counts disjoint traversals of every nested shell D(r, a * r).
 * Nested shells are queried with free sides; the outermost keeps the wired
 * count. */
TraversalMatrix traversal_matrix(Model model, double r, double delta,
                                 std::vector<double> aspects, std::int64_t n_samples, Rng& rng);

// Wilson-interval record for "traversal count >= k" at one matrix cell.
EstimateRecord matrix_record(const TraversalMatrix& m, std::size_t aspect_index, int k);

/* Single-cell estimate on the shell's own graph and boundary pair; success
 * is at least k disjoint traversals. */
EstimateRecord estimate_crossing_probability(Model model, const AnnulusSpec& shell, int k,
                                             double delta, std::int64_t n_samples, Rng& rng);

struct ExponentFit {
    int k = 0;
    double exponent_hat = 0.0;
    double exponent_stderr = 0.0;
    std::vector<double> aspect_ratios; // R/r of the cells used
    std::vector<double> residuals;     // log p_hat minus the fitted line
    std::int32_t excluded = 0;         // cells dropped for fewer than 20 successes
};

/* Least-squares fit of log p_hat against log(r/R).  Records must share the
 * model, multiplicity, and boundary pair; cells with fewer than 20 successes
 * are excluded and at least three usable aspects must remain. */
ExponentFit fit_exponent(const std::vector<EstimateRecord>& records, int k);

// Pinned aspect-ratio grid for exponent fits.
std::vector<double> exponent_aspect_grid();

struct RatioCell {
    int k = 0;         // the ratio p(k+1) / p(k)
    double ratio = 0.0;
    double hi = 0.0;   // Wilson upper bound of the nested success proportion
};

struct GeometricDecayReport {
    double aspect = 0.0;
    std::vector<EstimateRecord> records; // k = 1..k_max on shared samples
    std::vector<RatioCell> ratios;       // levels with at least 20 successes
    double decay_rate = 0.0;             // slope of log p_hat(k) against k
    bool geometric = false;              // every usable ratio bounded below 1
};

GeometricDecayReport geometric_decay_check(Model model, double aspect, int k_max, double r,
                                           double delta, std::int64_t n_samples, Rng& rng);

struct TelescopicReport {
    EstimateRecord whole;                // D(r_1, r_m)
    std::vector<EstimateRecord> factors; // D(r_j, r_{j+1})
    std::vector<double> long_edge_freq;  // per factor: samples with a shell-jumping tree edge
    double product_hi = 0.0;             // product of factor upper bounds plus long-edge rates
    bool holds = false;                  // whole lower bound <= product_hi
};

/* Compares the whole-shell crossing probability with the product of
 * sub-shell factors, each inflated by its long-edge frequency. */
TelescopicReport telescopic_compare(Model model, const std::vector<double>& radii, int k,
                                    double delta, std::int64_t n_samples, Rng& rng);

/* Sample means of exp(t * M) for each t on one shared batch, with jackknife
 * standard errors; M is the disjoint-traversal count of D(r, aspect * r)
 * with free inner / wired outer sides.  Mean-type records: p_hat is the mean
 * and the interval is a normal approximation. */
std::vector<EstimateRecord> estimate_crossing_mgf(Model model, double aspect,
                                                  const std::vector<double>& ts, double r,
                                                  double delta, std::int64_t n_samples, Rng& rng);

struct QuadraticGrowthFit {
    std::vector<double> ks;
    std::vector<double> gammas;
    double linear_aic = 0.0;
    double quadratic_aic = 0.0;
    double beta_hat = 0.0; // least-squares coefficient of (k - 1)^2
    bool quadratic_preferred = false;
};

// Fits gamma(k) with a + b*k and a + b*k + c*k^2, compares AIC, and fits
// beta * (k - 1)^2 through the origin.
QuadraticGrowthFit quadratic_growth_fit(const std::vector<double>& ks,
                                        const std::vector<double>& gammas);

struct QuadraticGrowthReport {
    std::vector<ExponentFit> fits; // one per fitted multiplicity
    QuadraticGrowthFit shape;
};

/* Exponent fits over the pinned aspect grid for each k in [k_lo, k_hi] on
 * one shared sample batch, followed by the shape comparison.  Multiplicities
 * whose fit lacks three usable cells are skipped. */
QuadraticGrowthReport quadratic_growth_probe(Model model, int k_lo, int k_hi, double r,
                                             double delta, std::int64_t n_samples, Rng& rng);

// One sample's lengthwise-traversal indicator: some tree path crosses rect
// between its two sides normal to axis using edges inside it.
bool rectangle_traversed(const SpanningTree& t, const Rect& rect, Axis axis);

/* Tree on the free disc of radius sigma * len around the origin; success =
 * the centered len x sigma*len rectangle is traversed lengthwise.  Lattice
 * models only. */
EstimateRecord rectangle_traversal_probability(Model model, double len, double sigma,
                                               double delta, std::int64_t n_samples, Rng& rng);

struct DeltaStabilityReport {
    std::vector<EstimateRecord> records;
    bool stable = false; // every pair of intervals overlaps
    std::int32_t first_bad_a = -1, first_bad_b = -1;
};

// Runs the observable at each delta and checks pairwise interval overlap.
DeltaStabilityReport delta_stability_check(const std::function<EstimateRecord(double)>& observable,
                                           const std::vector<double>& deltas);

} // namespace spantree
