#include "doctest.h"

#include "semilap/generators.hpp"
#include "semilap/graph.hpp"

#include "oracles.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <vector>

using semilap::RadialTreeModel;
using semilap::WeightedGraph;

namespace {

const std::function<double(int)> unit_weight = [](int) { return 1.0; };

// per-layer sum of vertex measures of an explicit tree
std::vector<double> explicit_layer_measures(const WeightedGraph& g, int branching, int depth) {
    auto offsets = semilap::tree_layer_offsets(branching, depth);
    std::vector<double> out(static_cast<std::size_t>(depth) + 1, 0.0);
    for (int n = 0; n <= depth; ++n) {
        for (std::int64_t v = offsets[static_cast<std::size_t>(n)]; v < offsets[static_cast<std::size_t>(n) + 1];
             ++v) {
            out[static_cast<std::size_t>(n)] += g.vertex_measure(static_cast<semilap::VertexId>(v));
        }
    }
    return out;
}

}  // namespace

TEST_SUITE("generators") {

TEST_CASE("make_path builds a segment") {
    auto g = semilap::make_path(5, 1.5);
    CHECK(g.vertex_count() == 6);
    CHECK(g.edge_count() == 5);
    CHECK(g.vertex_measure(0) == 1.5);
    CHECK(g.vertex_measure(3) == 3.0);
    CHECK(semilap::validate(g).empty());
    CHECK_THROWS_AS(semilap::make_path(0), std::domain_error);
}

TEST_CASE("tree layer sizes and degrees") {
    auto g1 = semilap::make_tree(3, 1, unit_weight);
    CHECK(g1.vertex_count() == 4);
    CHECK(g1.degree(0) == 3);

    auto g2 = semilap::make_tree(3, 2, unit_weight);
    CHECK(g2.vertex_count() == 10);  // 1 + 3 + 6
    auto offsets = semilap::tree_layer_offsets(3, 2);
    REQUIRE(offsets.size() == 4);
    CHECK(offsets[0] == 0);
    CHECK(offsets[1] == 1);
    CHECK(offsets[2] == 4);
    CHECK(offsets[3] == 10);
    // every layer-1 vertex: parent plus N-1 children
    for (semilap::VertexId v = 1; v < 4; ++v) {
        CHECK(g2.degree(v) == 3);
    }
    // rim vertices have only the parent
    for (semilap::VertexId v = 4; v < 10; ++v) {
        CHECK(g2.degree(v) == 1);
    }
    CHECK(semilap::validate(g2).empty());

    // layer counts |D_n| = N (N-1)^{n-1} for a larger tree
    auto off4 = semilap::tree_layer_offsets(4, 5);
    for (int n = 1; n <= 5; ++n) {
        const double expect = 4.0 * std::pow(3.0, n - 1);
        CHECK(static_cast<double>(off4[static_cast<std::size_t>(n) + 1] - off4[static_cast<std::size_t>(n)]) ==
              expect);
    }
}

TEST_CASE("tree distances follow layers") {
    auto g = semilap::make_tree(3, 4, unit_weight);
    auto offsets = semilap::tree_layer_offsets(3, 4);
    auto dist = semilap::distances_from(g, 0);
    for (int n = 0; n <= 4; ++n) {
        for (std::int64_t v = offsets[static_cast<std::size_t>(n)]; v < offsets[static_cast<std::size_t>(n) + 1];
             ++v) {
            CHECK(dist[static_cast<int>(v)] == n);
        }
    }
}

TEST_CASE("unit ternary tree has measure ratio three") {
    auto g = semilap::make_tree(3, 3, unit_weight);
    CHECK(semilap::measure_ratio_bound(g) == doctest::Approx(3.0).epsilon(1e-15));
}

TEST_CASE("vertex budget is enforced") {
    CHECK_THROWS_AS(semilap::make_tree(3, 25, unit_weight), std::domain_error);
    // raising the budget admits the next size up
    CHECK_THROWS_AS(semilap::make_tree(3, 19, unit_weight), std::domain_error);
    auto big = semilap::make_tree(3, 19, unit_weight, 2000000);
    CHECK(big.vertex_count() == 3 * (1 << 19) - 2);
}

TEST_CASE("level weights land on the right layers") {
    const std::function<double(int)> level_weight = [](int n) { return 1.0 + n; };
    auto g = semilap::make_tree(3, 3, level_weight);
    auto offsets = semilap::tree_layer_offsets(3, 3);
    auto dist = semilap::distances_from(g, 0);
    for (semilap::VertexId x = 0; x < g.vertex_count(); ++x) {
        for (semilap::VertexId y : g.neighbors(x)) {
            if (dist[x] + 1 == dist[y]) {
                CHECK(g.edge_weight(x, y) == doctest::Approx(1.0 + dist[x]).epsilon(1e-15));
            }
        }
    }
    (void)offsets;
}

TEST_CASE("radial model invariants") {
    CHECK_THROWS_AS(RadialTreeModel(1, {1.0, 1.0}), std::domain_error);
    CHECK_THROWS_AS(RadialTreeModel(3, {1.0, -2.0}), std::domain_error);
    CHECK_THROWS_AS(RadialTreeModel(3, {}), std::domain_error);

    RadialTreeModel m(3, {2.0, 6.0, 20.0});
    CHECK(m.depth() == 2);
    CHECK(m.reduced_weight(1) == 6.0);
    // mu_n = w_n / (N-1)^n
    CHECK(m.edge_weight(0) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(m.edge_weight(1) == doctest::Approx(3.0).epsilon(1e-15));
    CHECK(m.edge_weight(2) == doctest::Approx(5.0).epsilon(1e-15));
    CHECK(m.log_layer_size(0) == 0.0);
    CHECK(m.log_layer_size(1) == doctest::Approx(std::log(3.0)).epsilon(1e-15));
    CHECK(m.log_layer_size(2) == doctest::Approx(std::log(6.0)).epsilon(1e-15));
    CHECK(m.layer_size(2) == doctest::Approx(6.0).epsilon(1e-14));
    // mu(D_0) = N w_0, mu(D_n) = N (w_{n-1} + w_n)
    CHECK(m.layer_measure(0) == doctest::Approx(6.0).epsilon(1e-15));
    CHECK(m.layer_measure(1) == doctest::Approx(24.0).epsilon(1e-15));
    // mu(B(o,n)) = N (2 sum_{k<=n} w_k - w_n)
    CHECK(m.ball_volume(0) == doctest::Approx(6.0).epsilon(1e-15));
    CHECK(m.ball_volume(1) == doctest::Approx(3.0 * (2 * 8.0 - 6.0)).epsilon(1e-15));
}

TEST_CASE("radial model agrees with the explicit tree") {
    // depth <= 6, N <= 4: layer measures and ball volumes match to 1e-12
    for (int N : {3, 4}) {
        std::vector<double> w;
        for (int n = 0; n <= 6; ++n) {
            w.push_back(std::pow(n + 2.0, 3) * std::pow(std::log(n + 2.0), 1.5));
        }
        RadialTreeModel model(N, w);
        const std::function<double(int)> level_weight = [&](int n) { return model.edge_weight(n); };
        auto g = semilap::make_tree(N, 6, level_weight);
        auto layer_mu = explicit_layer_measures(g, N, 6);
        double ball = 0.0;
        for (int n = 0; n < 6; ++n) {  // rim layer measures differ: explicit rim has no outgoing edges
            CHECK(model.layer_measure(n) ==
                  doctest::Approx(layer_mu[static_cast<std::size_t>(n)]).epsilon(1e-12));
            ball += layer_mu[static_cast<std::size_t>(n)];
            CHECK(model.ball_volume(n) == doctest::Approx(ball).epsilon(1e-12));
        }
    }
}

TEST_CASE("radial lift places layer values") {
    RadialTreeModel model(3, {1.0, 2.0});
    auto [g, u] = semilap::radial_to_explicit(model, {5.0, 7.0}, 1);
    CHECK(g.vertex_count() == 4);
    CHECK(u[0] == 5.0);
    for (semilap::VertexId v = 1; v < 4; ++v) {
        CHECK(u[v] == 7.0);
        CHECK(g.edge_weight(0, v) == doctest::Approx(1.0).epsilon(1e-15));
    }

    auto [g2, u2] = semilap::radial_to_explicit(model, {5.0, 7.0, 9.0}, 1);
    CHECK(g2.vertex_count() == 4);
    CHECK(u2.size() == 4);

    CHECK_THROWS_AS(semilap::radial_to_explicit(model, {5.0}, 1), std::domain_error);
    CHECK_THROWS_AS(semilap::radial_to_explicit(model, {5.0, 7.0, 9.0}, 2), std::domain_error);
}

TEST_CASE("radial model text round trip") {
    RadialTreeModel model(3, {1.0 / 3.0, 2.0e-7, 123.456, 7.0});
    std::ostringstream out;
    semilap::write_radial_model(out, model, "round trip fixture");
    CHECK(out.str().find("# round trip fixture") != std::string::npos);
    std::istringstream in(out.str());
    auto back = semilap::read_radial_model(in);
    CHECK(back.branching() == 3);
    REQUIRE(back.depth() == 3);
    for (int n = 0; n <= 3; ++n) {
        CHECK(back.reduced_weight(n) == model.reduced_weight(n));
        CHECK(back.log_layer_size(n) == doctest::Approx(model.log_layer_size(n)).epsilon(1e-12));
    }
}

}  // TEST_SUITE
