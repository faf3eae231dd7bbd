#pragma once
// Random network sampling: PPP deployments on a square, nearest-BS
// association, random two-user clustering with ordering by the interference
// statistic S, and eavesdropper-free hole carving around BSs.
//
// Everything is driven by explicit RNG streams so realizations are
// reproducible and parallelizable. Stream seeds derive from a master seed via
// splitmix64 chaining (see substream_seed); permuting one stream's seed
// leaves the others' draws untouched.

#include "nomasec/params.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <random>
#include <span>
#include <utility>
#include <vector>

namespace nomasec {

struct Point2D {
    double x = 0.0;
    double y = 0.0;
};

using Rng = std::mt19937_64;

std::uint64_t splitmix64(std::uint64_t state);

// Seed for (master, realization index, stream tag). Streams with distinct
// tags are statistically independent; identical inputs give identical seeds.
std::uint64_t substream_seed(std::uint64_t master, std::uint64_t realization, std::uint64_t tag);

struct StreamSeeds {
    std::uint64_t bs, users, attackers, selection;
};
StreamSeeds derive_stream_seeds(std::uint64_t realization_seed);

// Homogeneous PPP on [0, region_side]^2: Poisson count, uniform positions.
std::vector<Point2D> sample_ppp(double density, double region_side, Rng& rng);

// Structure-of-arrays BS positions for the vectorizable interference sums.
struct BsField {
    std::vector<double> xs, ys;

    static BsField from_points(std::span<const Point2D> pts);
    std::size_t size() const { return xs.size(); }
    double dist2(std::size_t i, Point2D p) const {
        const double dx = xs[i] - p.x, dy = ys[i] - p.y;
        return dx * dx + dy * dy;
    }
};

// Serving-link power and inter-cell interference seen from `p`.
//   own_power    = d_serving^(-2*alpha)
//   interference = sum over every other BS of d^(-2*alpha)
// With serving_index < 0 the nearest BS is found and used as serving.
struct SiteStats {
    int serving = -1;
    double own_power = 0.0;
    double interference = 0.0;
};
SiteStats site_stats(const BsField& field, Point2D p, int serving_index, double alpha);

// Uniform-grid spatial index over BS points for nearest-neighbor queries.
class NearestIndex {
public:
    NearestIndex() = default;
    NearestIndex(const BsField& field, double region_side);

    // Index of the nearest BS; -1 when the field is empty.
    int nearest(const BsField& field, Point2D p) const;
    // True when some BS lies strictly closer than `radius`.
    bool any_within(const BsField& field, Point2D p, double radius) const;

private:
    int dim_ = 0;
    double cell_ = 0.0;
    double side_ = 0.0;
    std::vector<std::vector<int>> cells_;

    int cell_of(double v) const;
};

struct ClusterPair {
    Point2D central, second;
    double s_central = 0.0; // ordering statistic of the central user
    double s_second = 0.0;
};

struct CellClusters {
    bool usable = false; // had >= 2*I users (and >= 2 BSs exist for ordering)
    std::vector<ClusterPair> clusters;
};

// Assigns each user to its nearest BS, then forms `clusters_per_cell`
// disjoint random pairs per cell, each ordered central/second. Cells short
// of users are flagged unusable, never padded. Leftover users are dropped.
std::vector<CellClusters> associate_and_cluster(const BsField& field, const NearestIndex& index,
                                                std::span<const Point2D> users,
                                                int clusters_per_cell, double alpha, Rng& rng);

// Orders two co-located-cluster users by their statistic S; ties keep the
// first argument central. Requires >= 2 BSs.
std::pair<Point2D, Point2D> order_pair(Point2D u0, Point2D u1, std::span<const Point2D> bs,
                                       double alpha);

// Attackers at distance >= r0 from every BS (boundary survives).
std::vector<Point2D> carve_holes(std::span<const Point2D> attackers,
                                 std::span<const Point2D> bs, double r0);
std::vector<Point2D> carve_holes(std::span<const Point2D> attackers, const BsField& field,
                                 const NearestIndex& index, double r0);

struct TaggedCell {
    int cell_index = -1;
    int cluster_index = -1;
};

struct NetworkRealization {
    std::vector<Point2D> bs;
    std::vector<CellClusters> cells; // parallel to bs
    std::vector<Point2D> attackers;  // post-carve
    double region_side = 0.0;
    std::uint64_t seed = 0;
};

// The usable cell whose BS lies in the centered interior window (side *
// interior_fraction) closest to the region center; the measured cluster is
// drawn uniformly. nullopt when no usable interior cell exists -> the caller
// resamples.
std::optional<TaggedCell> select_tagged_cell(const NetworkRealization& net,
                                             double interior_fraction, Rng& rng);

NetworkRealization sample_network(const SystemParams& p, std::uint64_t seed);
NetworkRealization sample_network(const SystemParams& p, std::uint64_t seed,
                                  const StreamSeeds& streams);

// One text record per realization (coordinates in meters, 6 decimals).
void dump_realization(const NetworkRealization& net, std::ostream& os);

} // namespace nomasec
