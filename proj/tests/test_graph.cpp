#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <tcmnet/errors.hpp>
#include <tcmnet/graph.hpp>

using namespace tcmnet;

TEST_CASE("edges are stored normalized and looked up both ways") {
    Graph g(4);
    CHECK(g.add_edge(2, 1));
    CHECK(g.edge_count() == 1);
    CHECK(g.edges()[0].u == 1);
    CHECK(g.edges()[0].v == 2);
    CHECK(g.has_edge(1, 2));
    CHECK(g.has_edge(2, 1));
    CHECK_FALSE(g.has_edge(0, 1));
}

TEST_CASE("duplicate edges are rejected, invalid ones throw") {
    Graph g(3);
    CHECK(g.add_edge(0, 1));
    CHECK_FALSE(g.add_edge(1, 0));
    CHECK(g.edge_count() == 1);
    CHECK_THROWS_AS(g.add_edge(1, 1), InvalidArgument);
    CHECK_THROWS_AS(g.add_edge(0, 3), InvalidArgument);
}

TEST_CASE("edges keep insertion order") {
    Graph g(5);
    g.add_edge(3, 4);
    g.add_edge(0, 2);
    g.add_edge(1, 0);
    REQUIRE(g.edge_count() == 3);
    CHECK(g.edges()[0] == Edge{3, 4});
    CHECK(g.edges()[1] == Edge{0, 2});
    CHECK(g.edges()[2] == Edge{0, 1});
}

TEST_CASE("degrees count both endpoints") {
    Graph g(4);
    g.add_edge(0, 1);
    g.add_edge(0, 2);
    std::vector<int> deg = g.degrees();
    CHECK(deg == std::vector<int>{2, 1, 1, 0});
}

TEST_CASE("graph equality ignores insertion order") {
    Graph a(3), b(3);
    a.add_edge(0, 1);
    a.add_edge(1, 2);
    b.add_edge(1, 2);
    b.add_edge(0, 1);
    CHECK(a == b);
    b.add_edge(0, 2);
    CHECK_FALSE(a == b);
}

TEST_CASE("overlap counts shared edges") {
    Graph a(4), b(4);
    a.add_edge(0, 1);
    a.add_edge(1, 2);
    a.add_edge(2, 3);
    b.add_edge(0, 1);
    b.add_edge(2, 3);
    CHECK(a.overlap(b) == 2);
    CHECK(b.overlap(a) == 2);
}

TEST_CASE("edge keys normalize endpoint order") {
    CHECK(edge_key(7, 3) == edge_key(3, 7));
    CHECK(edge_key(1, 2) != edge_key(1, 3));
}

TEST_CASE("degree distribution includes isolated nodes and sums to one") {
    Graph g(3);
    g.add_edge(0, 1);
    DegreeDistribution d = degree_distribution(g);
    REQUIRE(d.mass.size() == 2);
    CHECK(d.mass[0] == doctest::Approx(1.0 / 3.0));
    CHECK(d.mass[1] == doctest::Approx(2.0 / 3.0));
    CHECK(d.max_degree() == 1);

    Graph lone(2);
    DegreeDistribution iso = degree_distribution(lone);
    REQUIRE(iso.mass.size() == 1);
    CHECK(iso.mass[0] == doctest::Approx(1.0));

    CHECK_THROWS_AS(degree_distribution(Graph(0)), InvalidArgument);
}
