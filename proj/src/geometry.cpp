#include "nomasec/geometry.hpp"

#include "nomasec/special.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace nomasec {

std::uint64_t splitmix64(std::uint64_t state) {
    std::uint64_t z = state + 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

std::uint64_t substream_seed(std::uint64_t master, std::uint64_t realization, std::uint64_t tag) {
    return splitmix64(splitmix64(master ^ splitmix64(realization)) ^ splitmix64(tag * 0xA24BAED4963EE407ull));
}

StreamSeeds derive_stream_seeds(std::uint64_t realization_seed) {
    return {substream_seed(realization_seed, 0, 1), substream_seed(realization_seed, 0, 2),
            substream_seed(realization_seed, 0, 3), substream_seed(realization_seed, 0, 4)};
}

std::vector<Point2D> sample_ppp(double density, double region_side, Rng& rng) {
    if (density < 0.0) throw std::invalid_argument("sample_ppp: density must be >= 0");
    if (!(region_side > 0.0)) throw std::invalid_argument("sample_ppp: region_side must be > 0");
    std::vector<Point2D> pts;
    if (density == 0.0) return pts;

    const double mean = density * region_side * region_side;
    std::poisson_distribution<long long> count_dist(mean);
    const long long n = count_dist(rng);
    pts.reserve(static_cast<std::size_t>(n));
    std::uniform_real_distribution<double> coord(0.0, region_side);
    for (long long i = 0; i < n; ++i) {
        const double x = coord(rng);
        const double y = coord(rng);
        pts.push_back({x, y});
    }
    return pts;
}

BsField BsField::from_points(std::span<const Point2D> pts) {
    BsField f;
    f.xs.reserve(pts.size());
    f.ys.reserve(pts.size());
    for (const auto& p : pts) {
        f.xs.push_back(p.x);
        f.ys.push_back(p.y);
    }
    return f;
}

namespace {

// sum over i in [begin, end) of ((xs[i]-px)^2 + (ys[i]-py)^2)^(-alpha)
double pathloss_sum(const double* xs, const double* ys, std::size_t begin, std::size_t end,
                    double px, double py, double alpha) {
    double sum = 0.0;
    if (alpha == 4.0) {
        for (std::size_t i = begin; i < end; ++i) {
            const double dx = xs[i] - px;
            const double dy = ys[i] - py;
            const double d2 = dx * dx + dy * dy;
            const double q = d2 * d2;
            sum += 1.0 / (q * q);
        }
    } else {
        for (std::size_t i = begin; i < end; ++i) {
            const double dx = xs[i] - px;
            const double dy = ys[i] - py;
            sum += pow2_neg_alpha(dx * dx + dy * dy, alpha);
        }
    }
    return sum;
}

} // namespace

SiteStats site_stats(const BsField& field, Point2D p, int serving_index, double alpha) {
    const std::size_t n = field.size();
    if (n == 0) return {};
    int serving = serving_index;
    if (serving < 0) {
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < n; ++i) {
            const double d2 = field.dist2(i, p);
            if (d2 < best) {
                best = d2;
                serving = static_cast<int>(i);
            }
        }
    }
    SiteStats s;
    s.serving = serving;
    s.own_power = pow2_neg_alpha(field.dist2(static_cast<std::size_t>(serving), p), alpha);
    // Two segments so the serving term never enters the sum; subtracting it
    // afterwards would cancel catastrophically when the user sits close in.
    s.interference = pathloss_sum(field.xs.data(), field.ys.data(), 0,
                                  static_cast<std::size_t>(serving), p.x, p.y, alpha) +
                     pathloss_sum(field.xs.data(), field.ys.data(),
                                  static_cast<std::size_t>(serving) + 1, n, p.x, p.y, alpha);
    return s;
}

NearestIndex::NearestIndex(const BsField& field, double region_side) {
    side_ = region_side;
    const std::size_t n = field.size();
    dim_ = std::max(1, static_cast<int>(std::sqrt(static_cast<double>(n))));
    dim_ = std::min(dim_, 2048);
    cell_ = region_side / dim_;
    cells_.assign(static_cast<std::size_t>(dim_) * dim_, {});
    for (std::size_t i = 0; i < n; ++i) {
        const int cx = cell_of(field.xs[i]);
        const int cy = cell_of(field.ys[i]);
        cells_[static_cast<std::size_t>(cy) * dim_ + cx].push_back(static_cast<int>(i));
    }
}

int NearestIndex::cell_of(double v) const {
    int c = static_cast<int>(v / cell_);
    return std::clamp(c, 0, dim_ - 1);
}

int NearestIndex::nearest(const BsField& field, Point2D p) const {
    if (cells_.empty() || field.size() == 0) return -1;
    const int cx = cell_of(p.x);
    const int cy = cell_of(p.y);
    int best = -1;
    double best_d2 = std::numeric_limits<double>::infinity();
    for (int ring = 0; ring < 2 * dim_; ++ring) {
        const int x0 = cx - ring, x1 = cx + ring;
        const int y0 = cy - ring, y1 = cy + ring;
        for (int y = std::max(0, y0); y <= std::min(dim_ - 1, y1); ++y) {
            const bool edge_row = (y == y0 || y == y1);
            for (int x = std::max(0, x0); x <= std::min(dim_ - 1, x1); ++x) {
                if (!edge_row && x != x0 && x != x1) continue; // interior already scanned
                for (int idx : cells_[static_cast<std::size_t>(y) * dim_ + x]) {
                    const double d2 = field.dist2(static_cast<std::size_t>(idx), p);
                    if (d2 < best_d2) {
                        best_d2 = d2;
                        best = idx;
                    }
                }
            }
        }
        // Any point in ring > R is at least (R * cell_) away from p.
        if (best >= 0) {
            const double reach = static_cast<double>(ring) * cell_;
            if (best_d2 <= reach * reach) break;
        }
    }
    return best;
}

bool NearestIndex::any_within(const BsField& field, Point2D p, double radius) const {
    if (radius <= 0.0 || cells_.empty()) return false;
    const int x0 = cell_of(p.x - radius), x1 = cell_of(p.x + radius);
    const int y0 = cell_of(p.y - radius), y1 = cell_of(p.y + radius);
    const double r2 = radius * radius;
    for (int y = y0; y <= y1; ++y) {
        for (int x = x0; x <= x1; ++x) {
            for (int idx : cells_[static_cast<std::size_t>(y) * dim_ + x]) {
                if (field.dist2(static_cast<std::size_t>(idx), p) < r2) return true;
            }
        }
    }
    return false;
}

namespace {

// Orders a selected pair given precomputed site statistics. Tie -> first.
ClusterPair make_ordered_pair(Point2D u0, const SiteStats& st0, Point2D u1,
                              const SiteStats& st1) {
    const double inf = std::numeric_limits<double>::infinity();
    const double s0 = st0.interference > 0.0 ? st0.own_power / st0.interference : inf;
    const double s1 = st1.interference > 0.0 ? st1.own_power / st1.interference : inf;
    if (s0 >= s1) return {u0, u1, s0, s1};
    return {u1, u0, s1, s0};
}

} // namespace

std::vector<CellClusters> associate_and_cluster(const BsField& field, const NearestIndex& index,
                                                std::span<const Point2D> users,
                                                int clusters_per_cell, double alpha, Rng& rng) {
    const std::size_t n_bs = field.size();
    std::vector<CellClusters> cells(n_bs);
    if (n_bs < 2) return cells; // ordering undefined with < 2 BSs: all unusable

    std::vector<std::vector<int>> members(n_bs);
    for (std::size_t u = 0; u < users.size(); ++u) {
        const int k = index.nearest(field, users[u]);
        if (k >= 0) members[static_cast<std::size_t>(k)].push_back(static_cast<int>(u));
    }

    const int need = 2 * clusters_per_cell;
    for (std::size_t k = 0; k < n_bs; ++k) {
        auto& bucket = members[k];
        auto& cell = cells[k];
        if (static_cast<int>(bucket.size()) < need) continue; // flagged, not padded
        // Partial Fisher-Yates: uniformly draw `need` distinct users in
        // random order, ignore the rest.
        for (int i = 0; i < need; ++i) {
            std::uniform_int_distribution<std::size_t> pick(i, bucket.size() - 1);
            std::swap(bucket[static_cast<std::size_t>(i)], bucket[pick(rng)]);
        }
        cell.usable = true;
        cell.clusters.reserve(static_cast<std::size_t>(clusters_per_cell));
        for (int c = 0; c < clusters_per_cell; ++c) {
            const Point2D u0 = users[static_cast<std::size_t>(bucket[2 * c])];
            const Point2D u1 = users[static_cast<std::size_t>(bucket[2 * c + 1])];
            const auto st0 = site_stats(field, u0, static_cast<int>(k), alpha);
            const auto st1 = site_stats(field, u1, static_cast<int>(k), alpha);
            cell.clusters.push_back(make_ordered_pair(u0, st0, u1, st1));
        }
    }
    return cells;
}

std::pair<Point2D, Point2D> order_pair(Point2D u0, Point2D u1, std::span<const Point2D> bs,
                                       double alpha) {
    if (bs.size() < 2) throw std::invalid_argument("order_pair: need at least 2 BSs");
    const BsField field = BsField::from_points(bs);
    const auto st0 = site_stats(field, u0, -1, alpha);
    const auto st1 = site_stats(field, u1, -1, alpha);
    const ClusterPair pair = make_ordered_pair(u0, st0, u1, st1);
    return {pair.central, pair.second};
}

std::vector<Point2D> carve_holes(std::span<const Point2D> attackers,
                                 std::span<const Point2D> bs, double r0) {
    if (r0 < 0.0) throw std::invalid_argument("carve_holes: r0 must be >= 0");
    std::vector<Point2D> kept;
    kept.reserve(attackers.size());
    const double r2 = r0 * r0;
    for (const auto& a : attackers) {
        bool inside_hole = false;
        for (const auto& b : bs) {
            const double dx = a.x - b.x, dy = a.y - b.y;
            if (dx * dx + dy * dy < r2) {
                inside_hole = true;
                break;
            }
        }
        if (!inside_hole) kept.push_back(a);
    }
    return kept;
}

std::vector<Point2D> carve_holes(std::span<const Point2D> attackers, const BsField& field,
                                 const NearestIndex& index, double r0) {
    if (r0 < 0.0) throw std::invalid_argument("carve_holes: r0 must be >= 0");
    std::vector<Point2D> kept;
    kept.reserve(attackers.size());
    for (const auto& a : attackers) {
        if (!index.any_within(field, a, r0)) kept.push_back(a);
    }
    return kept;
}

std::optional<TaggedCell> select_tagged_cell(const NetworkRealization& net,
                                             double interior_fraction, Rng& rng) {
    if (interior_fraction <= 0.0 || interior_fraction > 1.0)
        throw std::invalid_argument("select_tagged_cell: interior_fraction must be in (0,1]");
    const double side = net.region_side;
    const double lo = 0.5 * side * (1.0 - interior_fraction);
    const double hi = 0.5 * side * (1.0 + interior_fraction);
    const double cx = 0.5 * side, cy = 0.5 * side;

    int best = -1;
    double best_d2 = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < net.bs.size(); ++k) {
        if (!net.cells[k].usable) continue;
        const auto& b = net.bs[k];
        if (b.x < lo || b.x > hi || b.y < lo || b.y > hi) continue;
        const double dx = b.x - cx, dy = b.y - cy;
        const double d2 = dx * dx + dy * dy;
        if (d2 < best_d2) {
            best_d2 = d2;
            best = static_cast<int>(k);
        }
    }
    if (best < 0) return std::nullopt;

    const auto& clusters = net.cells[static_cast<std::size_t>(best)].clusters;
    std::uniform_int_distribution<int> pick(0, static_cast<int>(clusters.size()) - 1);
    return TaggedCell{best, pick(rng)};
}

NetworkRealization sample_network(const SystemParams& p, std::uint64_t seed) {
    return sample_network(p, seed, derive_stream_seeds(seed));
}

NetworkRealization sample_network(const SystemParams& p, std::uint64_t seed,
                                  const StreamSeeds& streams) {
    NetworkRealization net;
    net.region_side = p.region_side;
    net.seed = seed;

    Rng bs_rng(streams.bs);
    Rng user_rng(streams.users);
    Rng attacker_rng(streams.attackers);
    Rng selection_rng(streams.selection);

    net.bs = sample_ppp(p.lambda_b, p.region_side, bs_rng);
    const std::vector<Point2D> users = sample_ppp(p.lambda_u, p.region_side, user_rng);
    const std::vector<Point2D> raw_attackers = sample_ppp(p.lambda_e, p.region_side, attacker_rng);

    const BsField field = BsField::from_points(net.bs);
    const NearestIndex index(field, p.region_side);
    net.cells = associate_and_cluster(field, index, users, p.clusters_per_cell, p.alpha,
                                      selection_rng);
    net.attackers = net.bs.empty() ? std::vector<Point2D>(raw_attackers.begin(), raw_attackers.end())
                                   : carve_holes(raw_attackers, field, index, p.r0);
    return net;
}

void dump_realization(const NetworkRealization& net, std::ostream& os) {
    char buf[128];
    std::size_t n_clusters = 0;
    for (const auto& c : net.cells) n_clusters += c.clusters.size();
    os << "realization seed=" << net.seed << " region_side=" << net.region_side
       << " bs=" << net.bs.size() << " clusters=" << n_clusters
       << " attackers=" << net.attackers.size() << "\n";
    for (const auto& b : net.bs) {
        std::snprintf(buf, sizeof buf, "bs %.6f %.6f\n", b.x, b.y);
        os << buf;
    }
    for (std::size_t k = 0; k < net.cells.size(); ++k) {
        const auto& cell = net.cells[k];
        for (std::size_t i = 0; i < cell.clusters.size(); ++i) {
            const auto& cl = cell.clusters[i];
            std::snprintf(buf, sizeof buf, "cluster %zu %zu central %.6f %.6f second %.6f %.6f\n",
                          k, i, cl.central.x, cl.central.y, cl.second.x, cl.second.y);
            os << buf;
        }
    }
    for (const auto& a : net.attackers) {
        std::snprintf(buf, sizeof buf, "attacker %.6f %.6f\n", a.x, a.y);
        os << buf;
    }
}

} // namespace nomasec
