#include <doctest.h>

#include <cmath>
#include <vector>

#include <json.hpp>

#include "kbst/beading.hpp"
#include "kbst/heuristics.hpp"
#include "kbst/mst.hpp"
#include "kbst/rng.hpp"
#include "kbst/tree.hpp"

using namespace kbst;

namespace {

const std::vector<Point> kExample{{2.0, 9.1}, {3.0, 8.6}, {4.6, 3.1}, {8.6, 9.2}};
const std::vector<Point> kSix{{968.4, 506.4}, {3.9, 86.8},  {188.8, 7.5},
                              {779.2, 675.9}, {238.1, 644.4}, {620.6, 2.4}};

void check_valid(const Solution& sol, const std::vector<Point>& terminals, int k) {
    CHECK(sol.tree.connected_acyclic());
    CHECK(std::fabs(bottleneck(sol.tree).length - sol.bottleneck) <= 1e-15);
    const int n = static_cast<int>(terminals.size());
    int extras = 0;
    for (const Node& nd : sol.tree.node_list()) {
        if (nd.id < n) {
            CHECK(nd.kind == NodeKind::Terminal);
            CHECK(nd.pos.x == terminals[nd.id].x);
            CHECK(nd.pos.y == terminals[nd.id].y);
        } else {
            CHECK(nd.kind != NodeKind::Terminal);
            ++extras;
        }
    }
    CHECK(extras <= k);
    CHECK(static_cast<int>(sol.steiner_points.size()) == extras);
}

}  // namespace

TEST_CASE("straightness test") {
    Tree t;
    t.add_node({0, NodeKind::Terminal, {0, 0}});
    t.add_node({1, NodeKind::Steiner, {1, 0}});
    t.add_node({2, NodeKind::Terminal, {2, 0}});
    t.add_edge(0, 1);
    t.add_edge(1, 2);
    CHECK(straight_at(t, 1));
    CHECK(!straight_at(t, 0));  // degree 1

    t.node(1).pos = {1, 0.5};
    CHECK(!straight_at(t, 1));
}

TEST_CASE("reclassify") {
    Tree t;
    t.add_node({0, NodeKind::Terminal, {0, 0}});
    t.add_node({1, NodeKind::Steiner, {1, 0}});
    t.add_node({2, NodeKind::Terminal, {2, 0}});
    t.add_edge(0, 1);
    t.add_edge(1, 2);

    reclassify(t, {});
    CHECK(t.node(1).kind == NodeKind::Bead);
    CHECK(t.node(0).kind == NodeKind::Terminal);

    reclassify(t, {1});  // protected nodes stay Steiner
    CHECK(t.node(1).kind == NodeKind::Steiner);

    t.node(1).pos = {1, 0.5};
    reclassify(t, {});
    CHECK(t.node(1).kind == NodeKind::Steiner);
}

TEST_CASE("convert prunes, re-spaces and centers") {
    Tree t;
    t.add_node({0, NodeKind::Terminal, {0, 0}});
    t.add_node({1, NodeKind::Terminal, {3, 0}});
    t.add_node({2, NodeKind::Steiner, {0.5, 0}});
    t.add_node({3, NodeKind::Steiner, {2.7, 0}});
    t.add_node({4, NodeKind::Steiner, {9, 9}});  // dangling, gets pruned
    t.add_edge(0, 2);
    t.add_edge(2, 3);
    t.add_edge(3, 1);
    t.add_edge(3, 4);

    const Tree u = convert(t, 2);
    CHECK(!u.has_node(4));
    CHECK(std::fabs(u.node(2).pos.x - 1.0) <= 1e-12);
    CHECK(std::fabs(u.node(3).pos.x - 2.0) <= 1e-12);
    CHECK(std::fabs(u.node(2).pos.y) <= 1e-12);

    const Tree v = convert(u, 2);
    CHECK(v.node(2).pos.x == u.node(2).pos.x);
    CHECK(v.node(3).pos.x == u.node(3).pos.x);

    CHECK_THROWS_AS(convert(t, 77), std::invalid_argument);
}

TEST_CASE("four terminal example, all heuristics") {
    const Solution naive = naive_i1bsth(kExample, 2);
    CHECK(naive.algorithm == "naive");
    CHECK(std::fabs(naive.bottleneck - 3.7047238784442045) <= 1e-9);
    CHECK(naive.iterations == 2);
    check_valid(naive, kExample, 2);

    const Solution pre = prebeaded_i1bsth(kExample, 2);
    CHECK(pre.algorithm == "prebeaded");
    CHECK(std::fabs(pre.bottleneck - 2.864000698323937) <= 1e-9);
    check_valid(pre, kExample, 2);

    const Solution post = postbeaded_i1bsth(kExample, 2);
    CHECK(post.algorithm == "postbeaded");
    CHECK(std::fabs(post.bottleneck - 3.7047238784442027) <= 1e-9);
    check_valid(post, kExample, 2);

    // msth is strictly better than naive here, so the meta pick is msth.
    const Solution meta = meta_naive_msth(kExample, 2);
    CHECK(meta.algorithm == "meta");
    CHECK(std::fabs(meta.bottleneck - 2.864000698323937) <= 1e-9);
}

TEST_CASE("six terminal example, all heuristics") {
    for (const Solution& sol :
         {naive_i1bsth(kSix, 2), prebeaded_i1bsth(kSix, 2),
          postbeaded_i1bsth(kSix, 2)}) {
        CHECK(std::fabs(sol.bottleneck - 389.8693773882213) <= 1e-9);
        check_valid(sol, kSix, 2);
    }
}

TEST_CASE("pre-insertion beading separates the two drivers") {
    // Five terminals where the look-ahead matters in both directions:
    // solving the insertion on the beaded tree beats plain beading, while
    // solving it on the unbeaded tree ends up worse than beading alone.
    const std::vector<Point> pts{{903.60402619399429, 850.23613957580994},
                                 {783.8204654021481, 925.31710011540781},
                                 {252.90366417440592, 135.88582453786157},
                                 {224.54065627462305, 99.650335255241245},
                                 {22.087738670321102, 685.8428696521654}};
    const Solution pre = prebeaded_i1bsth(pts, 2);
    const Solution post = postbeaded_i1bsth(pts, 2);
    const Solution mst_sol = msth(pts, 2);
    CHECK(std::fabs(pre.bottleneck - 339.87678715403223) <= 1e-9);
    CHECK(std::fabs(post.bottleneck - 477.73142643654148) <= 1e-9);
    CHECK(std::fabs(mst_sol.bottleneck - 399.2444908919428) <= 1e-9);
    CHECK(pre.bottleneck < mst_sol.bottleneck - 1e-9);
    CHECK(mst_sol.bottleneck < post.bottleneck - 1e-9);
    check_valid(pre, pts, 2);
    check_valid(post, pts, 2);
}

TEST_CASE("single relay beats beads on the cross") {
    // Terminals at the four compass points. One relay at the origin gives
    // bottleneck 1; one bead only splits one of the sqrt(2) edges.
    const std::vector<Point> cross{{0, 1}, {0, -1}, {1, 0}, {-1, 0}};
    const Solution naive = naive_i1bsth(cross, 1);
    CHECK(std::fabs(naive.bottleneck - 1.0) <= 1e-12);
    const Solution mst_sol = msth(cross, 1);
    CHECK(std::fabs(mst_sol.bottleneck - 1.4142135623730951) <= 1e-12);
    const Solution meta = meta_naive_msth(cross, 1);
    CHECK(meta.algorithm == "meta");
    CHECK(std::fabs(meta.bottleneck - 1.0) <= 1e-12);
}

TEST_CASE("zero budget returns the spanning tree everywhere") {
    for (const Solution& sol :
         {msth(kExample, 0), naive_i1bsth(kExample, 0), prebeaded_i1bsth(kExample, 0),
          postbeaded_i1bsth(kExample, 0), meta_naive_msth(kExample, 0)}) {
        CHECK(std::fabs(sol.bottleneck - 5.728001396647874) <= 1e-9);
        CHECK(sol.steiner_points.empty());
    }
}

TEST_CASE("input validation") {
    CHECK_THROWS_AS(naive_i1bsth({{0, 0}}, 1), std::invalid_argument);
    CHECK_THROWS_AS(prebeaded_i1bsth(kExample, -1), std::invalid_argument);
    CHECK_THROWS_AS(postbeaded_i1bsth({}, 0), std::invalid_argument);
}

TEST_CASE("look-ahead never loses to plain beading") {
    Rng rng(909);
    for (int rep = 0; rep < 30; ++rep) {
        const int n = 6 + rep % 9;
        const int k = 1 + rep % 6;
        std::vector<Point> pts;
        for (int i = 0; i < n; ++i)
            pts.push_back({rng.uniform(0.0, 1000.0), rng.uniform(0.0, 1000.0)});
        const Solution pre = prebeaded_i1bsth(pts, k);
        const Solution mst_sol = msth(pts, k);
        CHECK(pre.bottleneck <= mst_sol.bottleneck + 1e-9);
        check_valid(pre, pts, k);
        check_valid(postbeaded_i1bsth(pts, k), pts, k);
    }
}

TEST_CASE("solution json") {
    const Solution sol = msth(kExample, 2);
    const std::string text = solution_to_json(sol, 2, 4);
    const auto j = nlohmann::json::parse(text);
    CHECK(j.at("algorithm") == "msth");
    CHECK(j.at("k") == 2);
    CHECK(j.at("n") == 4);
    CHECK(std::fabs(j.at("bottleneck").get<double>() - sol.bottleneck) <= 1e-15);
    CHECK(j.at("wall_time_s").get<double>() >= 0.0);
    const Tree t = tree_from_json(j.at("tree").dump());
    CHECK(t.nodes.size() == sol.tree.nodes.size());
    CHECK(t.edges == sol.tree.edges);
}
