#include <catch2/catch_amalgamated.hpp>

#include <set>
#include <vector>

#include "fixtures.hpp"
#include "fusswalk/bijection.hpp"
#include "fusswalk/dyck.hpp"
#include "fusswalk/ncst.hpp"

using namespace fusswalk;

TEST_CASE("base cases and small images", "[bijection]") {
  CHECK(path_to_tree(DyckPath()).empty());
  CHECK(path_to_tree(DyckPath::parse("UUD")).str() == "0-1");
  // the three structures at n=2, derived by applying the decomposition rules
  // by hand and cross-checked exhaustively below
  CHECK(tree_to_path(Ncst::parse("0-1,1-2")).str() == "UUDUUD");
  CHECK(tree_to_path(Ncst::parse("0-1,0-2")).str() == "UUUDUD");
  CHECK(tree_to_path(Ncst::parse("0-2,1-2")).str() == "UUUUDD");
}

TEST_CASE("the drawn 21-step example", "[bijection]") {
  const DyckPath p = fixtures::path("long_path");
  const Ncst t = fixtures::tree("long_tree");
  CHECK(path_to_tree(p) == t);
  CHECK(tree_to_path(t) == p);
}

TEST_CASE("the three 39-step fixtures", "[bijection]") {
  const DyckPath w1 = fixtures::path("w1_path");
  const DyckPath w2 = fixtures::path("w2_path");
  const DyckPath w3 = fixtures::path("w3_path");
  REQUIRE(w1.size() == 13);
  REQUIRE(w2.size() == 13);
  REQUIRE(w3.size() == 13);

  SECTION("the stated swap positions") {
    std::vector<int> diff12;
    for (int j = 1; j <= 39; ++j)
      if (w1.step(j) != w2.step(j)) diff12.push_back(j);
    CHECK(diff12 == std::vector<int>{20, 38});  // one move of a down-step

    std::vector<int> diff23;
    for (int j = 1; j <= 39; ++j)
      if (w2.step(j) != w3.step(j)) diff23.push_back(j);
    CHECK(diff23 == std::vector<int>{20, 21});  // an adjacent swap
  }

  SECTION("they map to the drawn trees") {
    CHECK(path_to_tree(w1) == fixtures::tree("w1_tree"));
    CHECK(path_to_tree(w2) == fixtures::tree("w2_tree"));
    CHECK(path_to_tree(w3) == fixtures::tree("w3_tree"));
  }

  SECTION("one adjacent move shares 8 edges and shifts 5") {
    const Ncst t2 = path_to_tree(w2);
    const Ncst t3 = path_to_tree(w3);
    std::set<Edge> e2(t2.edges().begin(), t2.edges().end());
    std::set<Edge> e3(t3.edges().begin(), t3.edges().end());
    int shared = 0;
    for (Edge e : e2) shared += e3.count(e) ? 1 : 0;
    CHECK(shared == 8);
    CHECK(static_cast<int>(e2.size()) - shared == 5);
    CHECK(static_cast<int>(e3.size()) - shared == 5);

    // W1 <-> W2 is a long-range move: almost nothing survives it
    const Ncst t1 = path_to_tree(w1);
    int shared12 = 0;
    for (Edge e : t1.edges()) shared12 += e2.count(e) ? 1 : 0;
    CHECK(shared12 == 1);
  }
}

TEST_CASE("bijectivity", "[bijection]") {
  for (int n = 0; n <= 7; ++n) {
    const auto paths = enumerate_paths(n, 7);
    const auto trees = enumerate_trees(n, 7);
    std::set<Ncst> images;
    for (const DyckPath& p : paths) {
      const Ncst t = path_to_tree(p);
      CHECK(tree_to_path(t) == p);
      images.insert(t);
    }
    CHECK(images.size() == paths.size());
    CHECK(images == std::set<Ncst>(trees.begin(), trees.end()));
  }
}

TEST_CASE("concatenation property", "[bijection]") {
  SECTION("worked example") {
    CHECK(check_concatenation(DyckPath::parse("UUD"), DyckPath::parse("UUD")));
    CHECK(path_to_tree(DyckPath::parse("UUDUUD")).str() == "0-1,1-2");
  }
  SECTION("an empty part is trivial") {
    CHECK(check_concatenation(DyckPath(), DyckPath::parse("UUDUUD")));
    CHECK(check_concatenation(DyckPath::parse("UUDUUD"), DyckPath()));
  }
  SECTION("exhaustive over all pairs with n_u + n_v <= 5") {
    for (int nu = 0; nu <= 5; ++nu)
      for (int nv = 0; nu + nv <= 5; ++nv)
        for (const DyckPath& u : enumerate_paths(nu, 5))
          for (const DyckPath& v : enumerate_paths(nv, 5))
            REQUIRE(check_concatenation(u, v));
  }
}
