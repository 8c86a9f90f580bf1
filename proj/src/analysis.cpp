#include "spantree/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "spantree/est.hpp"
#include "spantree/mst.hpp"
#include "spantree/ust.hpp"

namespace spantree {

namespace {

constexpr double kZ95 = 1.959963984540054; // normal_quantile(0.975)

/* One sampled configuration; views stay valid until the next draw.  Lattice
 * models share one graph, Est draws fresh points each time (a draw with no
 * usable points returns null views and counts zero everywhere). */
struct Draw {
    const RegionGraph* g = nullptr;
    const SpanningTree* tree = nullptr;
    const std::vector<EdgeId>* edges = nullptr;
};

class ConfigSampler {
  public:
    ConfigSampler(Model model, const AnnulusSpec& region, double delta)
        : model_(model), region_(region), delta_(delta) {
        switch (model) {
        case Model::Ust:
        case Model::Mst:
        case Model::Bernoulli:
            lattice_ = build_lattice_annulus(delta, region);
            break;
        case Model::Est:
            break;
        default:
            throw std::invalid_argument("model has no traversal sampler");
        }
    }

    Draw draw(Rng& rng) {
        switch (model_) {
        case Model::Ust:
            tree_ = wilson_ust(lattice_, lattice_.wired() ? lattice_.wired_vertex() : 0, rng);
            return {&lattice_, &tree_, &tree_.tree_edges};
        case Model::Mst:
            tree_ = kruskal_mst(lattice_, draw_call_numbers(lattice_, rng));
            return {&lattice_, &tree_, &tree_.tree_edges};
        case Model::Bernoulli:
            open_ = occupied_subgraph(lattice_, draw_call_numbers(lattice_, rng), 0.5);
            return {&lattice_, nullptr, &open_};
        default: {
            PointSet pts = sample_poisson(region_, delta_, rng);
            bool wired = region_.outer == Boundary::Wired ||
                         (region_.r > 0.0 && region_.inner == Boundary::Wired);
            if (pts.points.empty() || (!wired && pts.points.size() < 2)) return {};
            points_ = wired ? wired_delaunay_graph(pts, region_) : delaunay_graph(pts);
            tree_ = euclidean_mst(points_);
            return {&points_, &tree_, &tree_.tree_edges};
        }
        }
        return {};
    }

  private:
    Model model_;
    AnnulusSpec region_;
    double delta_;
    RegionGraph lattice_;
    RegionGraph points_;
    SpanningTree tree_;
    std::vector<EdgeId> open_;
};

int shell_count(const Draw& d, const AnnulusSpec& spec) {
    if (d.g == nullptr) return 0;
    if (d.tree != nullptr) return tree_traversal_count(*d.tree, spec);
    return percolation_crossing_count(*d.g, *d.edges, spec);
}

EstimateRecord proportion_record(Model model, const AnnulusSpec& shell, int k, double delta,
                                 std::int64_t successes, std::int64_t n_samples) {
    EstimateRecord rec;
    rec.model = model;
    rec.annulus = shell;
    rec.k = k;
    rec.delta = delta;
    rec.n_samples = n_samples;
    rec.successes = successes;
    rec.p_hat = n_samples > 0 ? static_cast<double>(successes) / n_samples : 0.0;
    Interval ci = n_samples > 0 ? wilson_interval(successes, n_samples) : Interval{0.0, 1.0};
    rec.ci_low = ci.lo;
    rec.ci_high = ci.hi;
    return rec;
}

AnnulusSpec query_shell(double r, double aspect, bool outermost) {
    return {Vec2{0.0, 0.0}, r, aspect * r, Boundary::Free,
            outermost ? Boundary::Wired : Boundary::Free};
}

} // namespace

TraversalMatrix traversal_matrix(Model model, double r, double delta,
                                 std::vector<double> aspects, std::int64_t n_samples, Rng& rng) {
    if (r <= 0.0) throw std::invalid_argument("traversal matrix needs r > 0");
    if (delta <= 0.0) throw std::invalid_argument("traversal matrix needs delta > 0");
    if (aspects.empty()) throw std::invalid_argument("traversal matrix needs aspects");
    if (n_samples < 0) throw std::invalid_argument("negative sample count");
    for (std::size_t j = 0; j < aspects.size(); ++j) {
        if (aspects[j] <= 1.0) throw std::invalid_argument("aspect must exceed 1");
        if (j > 0 && aspects[j] <= aspects[j - 1])
            throw std::invalid_argument("aspects must increase");
    }

    AnnulusSpec region = query_shell(r, aspects.back(), true);
    std::vector<AnnulusSpec> shells;
    for (std::size_t j = 0; j < aspects.size(); ++j)
        shells.push_back(query_shell(r, aspects[j], j + 1 == aspects.size()));

    ConfigSampler sampler(model, region, delta);
    TraversalMatrix m;
    m.model = model;
    m.r = r;
    m.delta = delta;
    m.counts.assign(aspects.size(), std::vector<int>(static_cast<std::size_t>(n_samples), 0));
    m.n_samples = n_samples;
    for (std::int64_t i = 0; i < n_samples; ++i) {
        Draw d = sampler.draw(rng);
        for (std::size_t j = 0; j < shells.size(); ++j)
            m.counts[j][static_cast<std::size_t>(i)] = shell_count(d, shells[j]);
    }
    m.aspects = std::move(aspects);
    return m;
}

EstimateRecord matrix_record(const TraversalMatrix& m, std::size_t aspect_index, int k) {
    if (aspect_index >= m.aspects.size()) throw std::invalid_argument("aspect index out of range");
    if (k < 0) throw std::invalid_argument("negative multiplicity");
    std::int64_t hits = 0;
    for (int c : m.counts[aspect_index])
        if (c >= k) ++hits;
    AnnulusSpec shell =
        query_shell(m.r, m.aspects[aspect_index], aspect_index + 1 == m.aspects.size());
    return proportion_record(m.model, shell, k, m.delta, hits, m.n_samples);
}

EstimateRecord estimate_crossing_probability(Model model, const AnnulusSpec& shell, int k,
                                             double delta, std::int64_t n_samples, Rng& rng) {
    if (shell.r <= 0.0) throw std::invalid_argument("crossing estimate needs an inner hole");
    if (shell.R <= shell.r) throw std::invalid_argument("crossing estimate needs R > r");
    if (k < 0) throw std::invalid_argument("negative multiplicity");
    if (n_samples <= 0) throw std::invalid_argument("sample count must be positive");

    std::int64_t hits = 0;
    if (k == 0) {
        hits = n_samples; // every configuration has count >= 0
    } else {
        ConfigSampler sampler(model, shell, delta);
        for (std::int64_t i = 0; i < n_samples; ++i)
            if (shell_count(sampler.draw(rng), shell) >= k) ++hits;
    }
    return proportion_record(model, shell, k, delta, hits, n_samples);
}

std::vector<double> exponent_aspect_grid() { return {2.0, 3.0, 4.5, 6.75}; }

ExponentFit fit_exponent(const std::vector<EstimateRecord>& records, int k) {
    if (records.empty()) throw std::invalid_argument("exponent fit needs records");
    ExponentFit fit;
    fit.k = k;
    std::vector<double> xs, ys;
    for (const EstimateRecord& rec : records) {
        if (!rec.annulus || rec.annulus->r <= 0.0)
            throw std::invalid_argument("exponent fit needs annulus records");
        if (rec.k != k || rec.model != records.front().model ||
            rec.annulus->inner != records.front().annulus->inner ||
            rec.annulus->outer != records.front().annulus->outer)
            throw std::invalid_argument("records disagree on model, multiplicity, or sides");
        if (rec.successes < 20) {
            ++fit.excluded;
            continue;
        }
        double aspect = rec.annulus->aspect();
        fit.aspect_ratios.push_back(aspect);
        xs.push_back(-std::log(aspect)); // log(r / R)
        ys.push_back(std::log(rec.p_hat));
    }
    std::vector<double> distinct = fit.aspect_ratios;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    if (distinct.size() < 3) throw std::invalid_argument("exponent fit needs three usable aspects");
    LineFit line = fit_line(xs, ys);
    fit.exponent_hat = line.slope;
    fit.exponent_stderr = line.slope_stderr;
    fit.residuals.resize(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i)
        fit.residuals[i] = ys[i] - (line.intercept + line.slope * xs[i]);
    return fit;
}

GeometricDecayReport geometric_decay_check(Model model, double aspect, int k_max, double r,
                                           double delta, std::int64_t n_samples, Rng& rng) {
    if (k_max < 1) throw std::invalid_argument("decay check needs k_max >= 1");
    TraversalMatrix m = traversal_matrix(model, r, delta, {aspect}, n_samples, rng);
    GeometricDecayReport rep;
    rep.aspect = aspect;
    for (int k = 1; k <= k_max; ++k) rep.records.push_back(matrix_record(m, 0, k));

    std::vector<double> xs, ys;
    for (int k = 1; k <= k_max; ++k) {
        const EstimateRecord& rec = rep.records[static_cast<std::size_t>(k - 1)];
        if (rec.successes < 20) continue;
        xs.push_back(k);
        ys.push_back(std::log(rec.p_hat));
    }
    if (xs.size() >= 2) rep.decay_rate = fit_line(xs, ys).slope;

    for (int k = 1; k < k_max; ++k) {
        std::int64_t lower = rep.records[static_cast<std::size_t>(k - 1)].successes;
        std::int64_t upper = rep.records[static_cast<std::size_t>(k)].successes;
        if (lower < 20) continue;
        RatioCell cell;
        cell.k = k;
        cell.ratio = static_cast<double>(upper) / lower;
        cell.hi = wilson_interval(upper, lower).hi;
        rep.ratios.push_back(cell);
    }
    rep.geometric = !rep.ratios.empty();
    for (const RatioCell& c : rep.ratios)
        if (c.hi >= 1.0) rep.geometric = false;
    return rep;
}

TelescopicReport telescopic_compare(Model model, const std::vector<double>& radii, int k,
                                    double delta, std::int64_t n_samples, Rng& rng) {
    if (radii.size() < 2) throw std::invalid_argument("telescoping needs at least two radii");
    if (radii.front() <= 0.0) throw std::invalid_argument("telescoping needs positive radii");
    for (std::size_t j = 1; j < radii.size(); ++j)
        if (radii[j] <= radii[j - 1]) throw std::invalid_argument("radii must increase");
    if (k < 1) throw std::invalid_argument("multiplicity must be positive");
    if (n_samples <= 0) throw std::invalid_argument("sample count must be positive");

    std::size_t m = radii.size() - 1;
    AnnulusSpec whole{Vec2{0.0, 0.0}, radii.front(), radii.back(), Boundary::Free,
                      Boundary::Wired};
    std::vector<AnnulusSpec> factor_specs;
    for (std::size_t j = 0; j < m; ++j)
        factor_specs.push_back(
            {Vec2{0.0, 0.0}, radii[j], radii[j + 1], Boundary::Free, Boundary::Wired});

    /* The whole-shell batch also measures, per factor shell, how often the
     * configuration jumps it with a single edge; such jumps are crossings the
     * factor counts cannot see, so they inflate the product bound. */
    ConfigSampler sampler(model, whole, delta);
    std::int64_t hits = 0;
    std::vector<std::int64_t> jumps(m, 0);
    for (std::int64_t i = 0; i < n_samples; ++i) {
        Draw d = sampler.draw(rng);
        if (shell_count(d, whole) >= k) ++hits;
        if (d.g == nullptr) continue;
        for (std::size_t j = 0; j < m; ++j)
            if (!long_edge_crossings(*d.g, *d.edges, factor_specs[j]).empty()) ++jumps[j];
    }

    TelescopicReport rep;
    rep.whole = proportion_record(model, whole, k, delta, hits, n_samples);
    for (std::size_t j = 0; j < m; ++j)
        rep.long_edge_freq.push_back(static_cast<double>(jumps[j]) / n_samples);

    if (m == 1) {
        rep.factors.push_back(rep.whole); // the single factor is the whole shell
    } else {
        for (std::size_t j = 0; j < m; ++j)
            rep.factors.push_back(
                estimate_crossing_probability(model, factor_specs[j], k, delta, n_samples, rng));
    }

    rep.product_hi = 1.0;
    for (std::size_t j = 0; j < m; ++j) {
        double jump_hi = jumps[j] > 0 ? wilson_interval(jumps[j], n_samples).hi : 0.0;
        rep.product_hi *= std::min(1.0, rep.factors[j].ci_high + jump_hi);
    }
    rep.holds = rep.whole.ci_low <= rep.product_hi;
    return rep;
}

std::vector<EstimateRecord> estimate_crossing_mgf(Model model, double aspect,
                                                  const std::vector<double>& ts, double r,
                                                  double delta, std::int64_t n_samples, Rng& rng) {
    if (ts.empty()) throw std::invalid_argument("mgf needs evaluation points");
    if (n_samples <= 0) throw std::invalid_argument("sample count must be positive");
    TraversalMatrix m = traversal_matrix(model, r, delta, {aspect}, n_samples, rng);
    const std::vector<int>& counts = m.counts.front();
    AnnulusSpec shell = query_shell(r, aspect, true);

    std::vector<EstimateRecord> out;
    out.reserve(ts.size());
    for (double t : ts) {
        double sum = 0.0;
        for (int c : counts) sum += std::exp(t * c);
        double mean = sum / static_cast<double>(n_samples);
        double ss = 0.0;
        for (int c : counts) {
            double e = std::exp(t * c) - mean;
            ss += e * e;
        }
        // jackknife variance of a sample mean reduces to ss / (n (n - 1))
        double se = n_samples > 1
                        ? std::sqrt(ss / (static_cast<double>(n_samples) * (n_samples - 1)))
                        : 0.0;
        EstimateRecord rec;
        rec.model = model;
        rec.annulus = shell;
        rec.k = 0;
        rec.delta = delta;
        rec.n_samples = n_samples;
        rec.p_hat = mean;
        rec.ci_low = mean - kZ95 * se;
        rec.ci_high = mean + kZ95 * se;
        out.push_back(rec);
    }
    return out;
}

QuadraticGrowthFit quadratic_growth_fit(const std::vector<double>& ks,
                                        const std::vector<double>& gammas) {
    if (ks.size() != gammas.size()) throw std::invalid_argument("mismatched fit inputs");
    if (ks.size() < 3) throw std::invalid_argument("shape fit needs three multiplicities");
    QuadraticGrowthFit fit;
    fit.ks = ks;
    fit.gammas = gammas;
    std::size_t m = ks.size();

    LineFit lin = fit_line(ks, gammas);
    double rss_lin = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        double e = gammas[i] - (lin.intercept + lin.slope * ks[i]);
        rss_lin += e * e;
    }

    double s[5] = {static_cast<double>(m), 0.0, 0.0, 0.0, 0.0};
    double t[3] = {0.0, 0.0, 0.0};
    for (std::size_t i = 0; i < m; ++i) {
        double k1 = ks[i], k2 = k1 * k1;
        s[1] += k1;
        s[2] += k2;
        s[3] += k2 * k1;
        s[4] += k2 * k2;
        t[0] += gammas[i];
        t[1] += gammas[i] * k1;
        t[2] += gammas[i] * k2;
    }
    double a[3][4] = {{s[0], s[1], s[2], t[0]}, {s[1], s[2], s[3], t[1]}, {s[2], s[3], s[4], t[2]}};
    for (int col = 0; col < 3; ++col) {
        int piv = col;
        for (int row = col + 1; row < 3; ++row)
            if (std::abs(a[row][col]) > std::abs(a[piv][col])) piv = row;
        std::swap(a[col], a[piv]);
        if (std::abs(a[col][col]) < 1e-12)
            throw std::invalid_argument("degenerate multiplicity grid");
        for (int row = col + 1; row < 3; ++row) {
            double f = a[row][col] / a[col][col];
            for (int c2 = col; c2 < 4; ++c2) a[row][c2] -= f * a[col][c2];
        }
    }
    double coef[3];
    for (int row = 2; row >= 0; --row) {
        double acc = a[row][3];
        for (int c2 = row + 1; c2 < 3; ++c2) acc -= a[row][c2] * coef[c2];
        coef[row] = acc / a[row][row];
    }
    double rss_quad = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        double e = gammas[i] - (coef[0] + coef[1] * ks[i] + coef[2] * ks[i] * ks[i]);
        rss_quad += e * e;
    }

    double dm = static_cast<double>(m);
    fit.linear_aic = dm * std::log(std::max(rss_lin, 1e-300) / dm) + 4.0;
    fit.quadratic_aic = dm * std::log(std::max(rss_quad, 1e-300) / dm) + 6.0;
    fit.quadratic_preferred = fit.quadratic_aic < fit.linear_aic;

    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        double q = (ks[i] - 1.0) * (ks[i] - 1.0);
        num += gammas[i] * q;
        den += q * q;
    }
    fit.beta_hat = den > 0.0 ? num / den : 0.0;
    return fit;
}

QuadraticGrowthReport quadratic_growth_probe(Model model, int k_lo, int k_hi, double r,
                                             double delta, std::int64_t n_samples, Rng& rng) {
    if (k_lo < 1 || k_hi < k_lo) throw std::invalid_argument("bad multiplicity range");
    std::vector<double> grid = exponent_aspect_grid();
    std::vector<std::vector<EstimateRecord>> by_k(static_cast<std::size_t>(k_hi - k_lo + 1));
    for (double aspect : grid) {
        TraversalMatrix m = traversal_matrix(model, r, delta, {aspect}, n_samples, rng);
        for (int k = k_lo; k <= k_hi; ++k)
            by_k[static_cast<std::size_t>(k - k_lo)].push_back(matrix_record(m, 0, k));
    }

    QuadraticGrowthReport rep;
    std::vector<double> ks, gammas;
    for (int k = k_lo; k <= k_hi; ++k) {
        const std::vector<EstimateRecord>& recs = by_k[static_cast<std::size_t>(k - k_lo)];
        int usable = 0;
        for (const EstimateRecord& rec : recs)
            if (rec.successes >= 20) ++usable;
        if (usable < 3) continue; // this multiplicity is out of reach at desk scale
        ExponentFit fit = fit_exponent(recs, k);
        ks.push_back(k);
        gammas.push_back(fit.exponent_hat);
        rep.fits.push_back(std::move(fit));
    }
    if (ks.size() >= 3) rep.shape = quadratic_growth_fit(ks, gammas);
    return rep;
}

bool rectangle_traversed(const SpanningTree& t, const Rect& rect, Axis axis) {
    return percolation_crossing_count(*t.graph, t.tree_edges, rect, axis) >= 1;
}

EstimateRecord rectangle_traversal_probability(Model model, double len, double sigma,
                                               double delta, std::int64_t n_samples, Rng& rng) {
    if (len <= 0.0) throw std::invalid_argument("rectangle needs len > 0");
    if (sigma < 1.0) throw std::invalid_argument("rectangle aspect must be at least 1");
    if (delta <= 0.0) throw std::invalid_argument("rectangle estimate needs delta > 0");
    if (n_samples <= 0) throw std::invalid_argument("sample count must be positive");
    if (model == Model::Est)
        throw std::invalid_argument("rectangle sides are lattice vertex rows");

    AnnulusSpec disc{Vec2{0.0, 0.0}, 0.0, sigma * len, Boundary::Free, Boundary::Free};
    Rect rect{-0.5 * sigma * len, -0.5 * len, 0.5 * sigma * len, 0.5 * len};
    ConfigSampler sampler(model, disc, delta);

    std::int64_t hits = 0;
    for (std::int64_t i = 0; i < n_samples; ++i) {
        Draw d = sampler.draw(rng);
        if (percolation_crossing_count(*d.g, *d.edges, rect, Axis::X) >= 1) ++hits;
    }

    EstimateRecord rec;
    rec.model = model;
    rec.rect = rect;
    rec.k = 1;
    rec.delta = delta;
    rec.n_samples = n_samples;
    rec.successes = hits;
    rec.p_hat = static_cast<double>(hits) / static_cast<double>(n_samples);
    Interval ci = wilson_interval(hits, n_samples);
    rec.ci_low = ci.lo;
    rec.ci_high = ci.hi;
    return rec;
}

DeltaStabilityReport delta_stability_check(const std::function<EstimateRecord(double)>& observable,
                                           const std::vector<double>& deltas) {
    if (!observable) throw std::invalid_argument("stability check needs an observable");
    if (deltas.empty()) throw std::invalid_argument("stability check needs deltas");
    DeltaStabilityReport rep;
    for (double d : deltas) rep.records.push_back(observable(d));
    rep.stable = true;
    for (std::size_t a = 0; a + 1 < rep.records.size() && rep.stable; ++a)
        for (std::size_t b = a + 1; b < rep.records.size(); ++b)
            if (!rep.records[a].ci().overlaps(rep.records[b].ci())) {
                rep.stable = false;
                rep.first_bad_a = static_cast<std::int32_t>(a);
                rep.first_bad_b = static_cast<std::int32_t>(b);
                break;
            }
    return rep;
}

} // namespace spantree
