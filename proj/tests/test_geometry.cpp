// Stochastic geometry: PPP sampling, association, clustering, ordering,
// hole carving, tagged-cell selection. Brute-force oracles throughout.

#include "nomasec/geometry.hpp"
#include "nomasec/sinr.hpp"

#include "test_util.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

using namespace nomasec;

namespace {

void test_sample_ppp_basics() {
    Rng rng(7);
    CHECK(sample_ppp(0.0, 1000.0, rng).empty());

    // determinism: same seed, same point set
    Rng a(123), b(123);
    const auto pa = sample_ppp(1e-4, 3000.0, a);
    const auto pb = sample_ppp(1e-4, 3000.0, b);
    CHECK(pa.size() == pb.size());
    bool same = true;
    for (std::size_t i = 0; i < pa.size(); ++i) {
        same = same && pa[i].x == pb[i].x && pa[i].y == pb[i].y;
    }
    CHECK(same);

    for (const auto& p : pa) {
        CHECK(p.x >= 0.0 && p.x <= 3000.0 && p.y >= 0.0 && p.y <= 3000.0);
    }
}

void test_sample_ppp_moments() {
    // mean count 900 over repeated draws; also Poisson counts on a
    // sub-rectangle stay within 4 sqrt(lambda A) of lambda A
    const double density = 1e-4, side = 3000.0;
    const double mean = density * side * side;
    double total = 0.0;
    double sub_total = 0.0;
    const double sub_w = 1200.0, sub_h = 700.0;
    const int draws = 1000;
    for (int i = 0; i < draws; ++i) {
        Rng rng(substream_seed(99, static_cast<std::uint64_t>(i), 1));
        const auto pts = sample_ppp(density, side, rng);
        total += static_cast<double>(pts.size());
        for (const auto& p : pts) {
            if (p.x < sub_w && p.y < sub_h) sub_total += 1.0;
        }
    }
    CHECK_NEAR(total / draws, mean, 3.0 * std::sqrt(mean));
    const double sub_mean = density * sub_w * sub_h;
    CHECK_NEAR(sub_total / draws, sub_mean, 4.0 * std::sqrt(sub_mean));
}

void test_association_oracle() {
    // two BSs far apart: users split by the midline; verified against a
    // brute-force nearest search on random configurations
    const std::vector<Point2D> bs = {{500.0, 500.0}, {2500.0, 500.0}};
    const BsField field = BsField::from_points(bs);
    const NearestIndex index(field, 3000.0);
    Rng rng(5);
    std::uniform_real_distribution<double> u(0.0, 3000.0);
    for (int i = 0; i < 2000; ++i) {
        const Point2D p{u(rng), u(rng)};
        const int got = index.nearest(field, p);
        const int want = field.dist2(0, p) <= field.dist2(1, p) ? 0 : 1;
        if (field.dist2(0, p) != field.dist2(1, p)) CHECK(got == want);
        CHECK((p.x < 1500.0) == (got == 0) || p.x == 1500.0);
    }

    // random fields vs brute force
    for (int trial = 0; trial < 50; ++trial) {
        Rng trng(substream_seed(17, static_cast<std::uint64_t>(trial), 2));
        const auto pts = sample_ppp(2e-5, 3000.0, trng);
        if (pts.size() < 2) continue;
        const BsField f = BsField::from_points(pts);
        const NearestIndex idx(f, 3000.0);
        for (int q = 0; q < 50; ++q) {
            const Point2D p{u(trng), u(trng)};
            const int got = idx.nearest(f, p);
            int want = 0;
            for (std::size_t k = 1; k < pts.size(); ++k) {
                if (f.dist2(k, p) < f.dist2(static_cast<std::size_t>(want), p))
                    want = static_cast<int>(k);
            }
            CHECK(got == want);
        }
    }
}

void test_cluster_counts() {
    // one BS plus a remote one; 100 users near the first: I = 5 keeps 10
    std::vector<Point2D> bs = {{1500.0, 1500.0}, {40000.0, 40000.0}};
    const BsField field = BsField::from_points(bs);
    const NearestIndex index(field, 3000.0);
    std::vector<Point2D> users;
    Rng rng(11);
    std::uniform_real_distribution<double> u(1400.0, 1600.0);
    for (int i = 0; i < 100; ++i) users.push_back({u(rng), u(rng)});

    const auto cells = associate_and_cluster(field, index, users, 5, 4.0, rng);
    CHECK(cells.size() == 2);
    CHECK(cells[0].usable);
    CHECK(cells[0].clusters.size() == 5);
    CHECK(!cells[1].usable); // no users there
    CHECK(cells[1].clusters.empty());

    // disjointness: the 10 selected users are distinct points
    std::set<std::pair<double, double>> seen;
    for (const auto& cl : cells[0].clusters) {
        seen.insert({cl.central.x, cl.central.y});
        seen.insert({cl.second.x, cl.second.y});
    }
    CHECK(seen.size() == 10);

    // exact fit: 2I users -> all clustered
    std::vector<Point2D> ten(users.begin(), users.begin() + 10);
    Rng rng2(12);
    const auto cells2 = associate_and_cluster(field, index, ten, 5, 4.0, rng2);
    CHECK(cells2[0].usable);
    CHECK(cells2[0].clusters.size() == 5);

    // one short of 2I -> flagged unusable, never padded
    std::vector<Point2D> nine(users.begin(), users.begin() + 9);
    Rng rng3(13);
    const auto cells3 = associate_and_cluster(field, index, nine, 5, 4.0, rng3);
    CHECK(!cells3[0].usable);
}

void test_order_pair() {
    const std::vector<Point2D> bs = {{0.0, 0.0}, {100.0, 0.0}};
    // u0 closer to its BS and farther from the interferer than u1 -> central
    const Point2D u0{1.0, 0.0}, u1{30.0, 0.0};
    const auto [c, s] = order_pair(u0, u1, bs, 4.0);
    CHECK(c.x == u0.x && s.x == u1.x);

    // ties keep the first argument central
    const auto [c2, s2] = order_pair(u1, u1, bs, 4.0);
    CHECK(c2.x == u1.x && s2.x == u1.x);

    CHECK_THROWS(order_pair(u0, u1, std::vector<Point2D>{{0.0, 0.0}}, 4.0));

    // random configurations against a direct S comparison
    Rng rng(21);
    std::uniform_real_distribution<double> u(0.0, 1000.0);
    for (int trial = 0; trial < 1000; ++trial) {
        std::vector<Point2D> field_pts(3 + rng() % 5);
        for (auto& p : field_pts) p = {u(rng), u(rng)};
        const Point2D a{u(rng), u(rng)}, b{u(rng), u(rng)};
        const auto [central, second] = order_pair(a, b, field_pts, 4.0);

        auto s_of = [&](Point2D pt) {
            double best = 1e300;
            std::size_t serving = 0;
            for (std::size_t i = 0; i < field_pts.size(); ++i) {
                const double dx = field_pts[i].x - pt.x, dy = field_pts[i].y - pt.y;
                const double d2 = dx * dx + dy * dy;
                if (d2 < best) {
                    best = d2;
                    serving = i;
                }
            }
            std::vector<double> others;
            for (std::size_t i = 0; i < field_pts.size(); ++i) {
                if (i == serving) continue;
                const double dx = field_pts[i].x - pt.x, dy = field_pts[i].y - pt.y;
                others.push_back(std::sqrt(dx * dx + dy * dy));
            }
            return ordering_statistic(std::sqrt(best), others, 4.0);
        };
        CHECK(s_of(central) >= s_of(second));
    }
}

void test_carve_holes() {
    const std::vector<Point2D> bs = {{0.0, 0.0}};
    const std::vector<Point2D> attackers = {{3.0, 0.0}, {6.0, 0.0}, {9.0, 0.0}};

    const auto kept0 = carve_holes(attackers, bs, 0.0);
    CHECK(kept0.size() == 3); // empty holes

    const auto kept = carve_holes(attackers, bs, 6.0);
    CHECK(kept.size() == 2); // boundary inclusive: 6 and 9 survive
    CHECK(kept[0].x == 6.0 && kept[1].x == 9.0);

    // indexed overload agrees with the brute-force one on random fields
    Rng rng(31);
    const auto bs_pts = sample_ppp(1e-4, 2000.0, rng);
    const auto att_pts = sample_ppp(5e-4, 2000.0, rng);
    const BsField field = BsField::from_points(bs_pts);
    const NearestIndex index(field, 2000.0);
    const auto a1 = carve_holes(att_pts, bs_pts, 25.0);
    const auto a2 = carve_holes(att_pts, field, index, 25.0);
    CHECK(a1.size() == a2.size());

    // post-carve the min distance to any BS is >= r0, exactly
    double min_d2 = 1e300;
    for (const auto& a : a1) {
        for (const auto& b : bs_pts) {
            const double dx = a.x - b.x, dy = a.y - b.y;
            min_d2 = std::min(min_d2, dx * dx + dy * dy);
        }
    }
    CHECK(std::sqrt(min_d2) >= 25.0);

    // survivor count tracks the uncovered area estimate on sparse holes
    // (r0 small so holes stay essentially disjoint)
    double survivors = 0.0;
    const int draws = 1000;
    const double lam_e = 5e-4, r0 = 10.0, side = 2000.0;
    for (int i = 0; i < draws; ++i) {
        Rng r(substream_seed(77, static_cast<std::uint64_t>(i), 3));
        const auto batt = sample_ppp(lam_e, side, r);
        survivors += static_cast<double>(carve_holes(batt, bs_pts, r0).size());
    }
    // covered area before boundary effects: n_bs * pi r0^2 (holes well apart)
    double covered = 0.0;
    for (const auto& b : bs_pts) {
        (void)b;
        covered += M_PI * r0 * r0;
    }
    const double expect = lam_e * (side * side - covered);
    CHECK_REL(survivors / draws, expect, 0.05);
}

void test_stream_independence() {
    const SystemParams p; // stock parameters
    const std::uint64_t seed = 4242;
    const StreamSeeds base = derive_stream_seeds(seed);
    StreamSeeds perturbed = base;
    perturbed.attackers = splitmix64(base.attackers + 1);

    const auto net_a = sample_network(p, seed, base);
    const auto net_b = sample_network(p, seed, perturbed);
    CHECK(net_a.bs.size() == net_b.bs.size());
    bool bs_same = net_a.bs.size() == net_b.bs.size();
    for (std::size_t i = 0; bs_same && i < net_a.bs.size(); ++i) {
        bs_same = net_a.bs[i].x == net_b.bs[i].x && net_a.bs[i].y == net_b.bs[i].y;
    }
    CHECK(bs_same); // permuting the attacker stream leaves BSs bit-identical

    bool clusters_same = net_a.cells.size() == net_b.cells.size();
    for (std::size_t k = 0; clusters_same && k < net_a.cells.size(); ++k) {
        clusters_same = net_a.cells[k].clusters.size() == net_b.cells[k].clusters.size();
        for (std::size_t c = 0; clusters_same && c < net_a.cells[k].clusters.size(); ++c) {
            const auto& ca = net_a.cells[k].clusters[c];
            const auto& cb = net_b.cells[k].clusters[c];
            clusters_same = ca.central.x == cb.central.x && ca.second.y == cb.second.y;
        }
    }
    CHECK(clusters_same);
    CHECK(net_a.attackers.size() != net_b.attackers.size() ||
          net_a.attackers.empty()); // attacker draw did change
}

void test_network_invariants() {
    SystemParams p;
    p.lambda_b = 1e-4;
    p.lambda_u = 1e-2;
    p.lambda_e = 1e-4;
    p.region_side = 2000.0;
    const auto net = sample_network(p, 99);
    CHECK(net.bs.size() > 300 / 2); // sanity: Poisson(400) far from empty

    // every cluster pair is ordered by S
    for (const auto& cell : net.cells) {
        for (const auto& cl : cell.clusters) {
            CHECK(cl.s_central >= cl.s_second);
        }
    }

    // attackers respect the exclusion radius
    for (const auto& a : net.attackers) {
        double min_d2 = 1e300;
        for (const auto& b : net.bs) {
            const double dx = a.x - b.x, dy = a.y - b.y;
            min_d2 = std::min(min_d2, dx * dx + dy * dy);
        }
        CHECK(min_d2 >= p.r0 * p.r0);
    }

    // tagged cell: usable, in the interior window, nearest usable to center
    Rng rng(5);
    const auto tagged = select_tagged_cell(net, 1.0 / 3.0, rng);
    CHECK(tagged.has_value());
    if (tagged) {
        const auto& b = net.bs[static_cast<std::size_t>(tagged->cell_index)];
        CHECK(b.x >= 2000.0 / 3.0 && b.x <= 2.0 * 2000.0 / 3.0);
        CHECK(net.cells[static_cast<std::size_t>(tagged->cell_index)].usable);
        CHECK(tagged->cluster_index >= 0 && tagged->cluster_index < p.clusters_per_cell);
    }

    // rejection path: no interior BS in a tiny window with a far-off seed
    NetworkRealization empty_net;
    empty_net.region_side = 100.0;
    empty_net.bs = {{1.0, 1.0}};
    empty_net.cells.resize(1);
    Rng rng2(6);
    CHECK(!select_tagged_cell(empty_net, 0.1, rng2).has_value());
}

void test_rejection_rate_and_dump() {
    SystemParams p;
    p.lambda_b = 1e-4;
    p.lambda_u = 1e-2;
    p.lambda_e = 0.0;
    p.region_side = 2000.0;
    int rejected = 0;
    const int draws = 300;
    for (int i = 0; i < draws; ++i) {
        const auto net = sample_network(p, substream_seed(1000, static_cast<std::uint64_t>(i), 0));
        Rng rng(substream_seed(1000, static_cast<std::uint64_t>(i), 5));
        if (!select_tagged_cell(net, 1.0 / 3.0, rng)) ++rejected;
    }
    CHECK(rejected <= 3); // < 1% at these densities

    const auto net = sample_network(p, 7);
    std::ostringstream os;
    dump_realization(net, os);
    const std::string text = os.str();
    CHECK(text.find("realization seed=7") != std::string::npos);
    CHECK(text.find("bs ") != std::string::npos);
    CHECK(text.find("cluster 0 0 central ") != std::string::npos);
}

} // namespace

int main() {
    RUN(test_sample_ppp_basics);
    RUN(test_sample_ppp_moments);
    RUN(test_association_oracle);
    RUN(test_cluster_counts);
    RUN(test_order_pair);
    RUN(test_carve_holes);
    RUN(test_stream_independence);
    RUN(test_network_invariants);
    RUN(test_rejection_rate_and_dump);
    return testutil::summary("geometry");
}
