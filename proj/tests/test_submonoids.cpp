#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>
#include <set>

#include "ubp/submonoids.hpp"

using ubp::IntegerPartition;
using ubp::SetPartition;
using ubp::Submonoid;

namespace {

  IntegerPartition P(std::string_view s) {
    return IntegerPartition::parse(s);
  }

  std::vector<std::uint64_t> sizes(std::vector<Submonoid> const& lattice) {
    std::vector<std::uint64_t> out;
    for (auto const& s : lattice) {
      out.push_back(static_cast<std::uint64_t>(s.size()));
    }
    return out;
  }

  std::vector<ubp::UniformBlockPermutation> units(int k) {
    std::vector<ubp::UniformBlockPermutation> out;
    for (auto const& s : ubp::Permutation::all(k)) {
      out.push_back(ubp::from_permutation(s));
    }
    return out;
  }

  // Downsets of a poset given by its relation matrix, by checking every
  // subset of nodes.
  std::uint64_t brute_force_downsets(std::vector<std::vector<char>> const& rel) {
    std::size_t const n     = rel.size();
    std::uint64_t     count = 0;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
      bool ok = true;
      for (std::size_t j = 0; j < n && ok; ++j) {
        if (mask >> j & 1) {
          for (std::size_t i = 0; i < n && ok; ++i) {
            ok = !rel[i][j] || (mask >> i & 1);
          }
        }
      }
      count += ok ? 1 : 0;
    }
    return count;
  }

  // A random poset: the transitive closure of random edges i -> j, i < j.
  std::vector<std::vector<char>> random_poset(std::mt19937& rng, std::size_t n, double density) {
    std::bernoulli_distribution    coin(density);
    std::vector<std::vector<char>> rel(n, std::vector<char>(n, 0));
    for (std::size_t i = 0; i < n; ++i) {
      rel[i][i] = 1;
      for (std::size_t j = i + 1; j < n; ++j) {
        rel[i][j] = coin(rng) ? 1 : 0;
      }
    }
    for (std::size_t m = 0; m < n; ++m) {
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          if (rel[i][m] && rel[m][j]) {
            rel[i][j] = 1;
          }
        }
      }
    }
    return rel;
  }

}  // namespace

TEST_CASE("submonoids from downsets") {
  auto const g = Submonoid::from_downset(4, {});
  CHECK(g.is_group());
  CHECK(g.size() == 24);
  CHECK(g.label() == "\xe2\x88\x85");

  auto const s22 = Submonoid::from_downset(4, {P("4"), P("2,2")});
  CHECK(s22.size() == 43);
  CHECK(s22.label() == "22");
  CHECK(s22.contains_class(P("1,1,1,1")));
  CHECK_FALSE(s22.contains_class(P("3,1")));

  try {
    Submonoid::from_downset(4, {P("2,2")});
    FAIL("accepted a set that is not a downset");
  } catch (ubp::Error const& e) {
    CHECK(e.kind() == ubp::error_kind::not_a_downset);
    CHECK(std::string(e.what()).find("\"4\"") != std::string::npos);
  }
  try {
    Submonoid::from_downset(4, {P("1,1,1,1")});
    FAIL("accepted 1^k");
  } catch (ubp::Error const& e) {
    CHECK(e.kind() == ubp::error_kind::contains_all_ones);
  }
  CHECK_THROWS_AS(Submonoid::from_downset(4, {P("3")}), ubp::Error);
  CHECK(Submonoid::full(4).size() == 131);
}

TEST_CASE("principal submonoids") {
  auto const a = ubp::principal(4, SetPartition::parse("{{1,2},{3,4}}"));
  CHECK(a.downset() == std::vector<IntegerPartition>{P("4"), P("2,2")});
  CHECK(a.size() == 43);
  auto const b = ubp::principal(4, SetPartition::parse("{{1,2,3},{4}}"));
  CHECK(b.downset() == std::vector<IntegerPartition>{P("4"), P("3,1")});
  CHECK(b.size() == 41);
  CHECK(ubp::principal(4, SetPartition::singletons(4)).is_group());

  auto const gens = units(4);
  for (auto const& pi : ubp::set_partitions_of(4)) {
    auto with = gens;
    with.push_back(ubp::idempotent_of(pi));
    auto const closure = ubp::generated_by(4, with);
    auto const members = ubp::members_of(ubp::principal(4, pi));
    CHECK(closure == std::unordered_set<ubp::UniformBlockPermutation>(members.begin(), members.end()));
  }
}

TEST_CASE("generated_by") {
  auto with = units(2);
  with.push_back(ubp::idempotent_of(SetPartition::single_block(2)));
  CHECK(ubp::generated_by(2, with).size() == 3);
  CHECK(ubp::generated_by(4, units(4)).size() == 24);
  auto g = units(4);
  g.push_back(ubp::idempotent_of(SetPartition::parse("{{1,2},{3,4}}")));
  auto const closure = ubp::generated_by(4, g);
  CHECK(closure.size() == 43);
  std::set<IntegerPartition> types;
  for (auto const& x : closure) {
    types.insert(x.type());
  }
  CHECK(types == std::set<IntegerPartition>{P("1,1,1,1"), P("4"), P("2,2")});
  try {
    ubp::generated_by(6, units(6));
    FAIL("generated_by ran above its bound");
  } catch (ubp::Error const& e) {
    CHECK(e.kind() == ubp::error_kind::bound_exceeded);
  }
}

TEST_CASE("closing S_k and one element gives a union of J-classes, k <= 4") {
  for (int k = 1; k <= 4; ++k) {
    for (auto const& x : ubp::enumerate_U(k)) {
      auto gens = units(k);
      gens.push_back(x);
      auto const closure = ubp::generated_by(k, gens);
      std::map<IntegerPartition, ubp::BigInt> per_type;
      for (auto const& y : closure) {
        per_type[y.type()] += 1;
      }
      for (auto const& [mu, n] : per_type) {
        REQUIRE(n == ubp::j_class_size(k, mu));
      }
    }
  }
}

TEST_CASE("union and intersection") {
  auto const s31 = Submonoid::from_downset(4, {P("4"), P("3,1")});
  auto const s22 = Submonoid::from_downset(4, {P("4"), P("2,2")});
  auto const u   = ubp::submonoid_union(s31, s22);
  CHECK(u.downset() == std::vector<IntegerPartition>{P("4"), P("3,1"), P("2,2")});
  CHECK(u.size() == 59);
  CHECK(u.label() == "31, 22");
  auto const i = ubp::submonoid_intersection(s31, s22);
  CHECK(i.downset() == std::vector<IntegerPartition>{P("4")});
  CHECK(i.size() == 25);
  CHECK(ubp::submonoid_union(s31, s31) == s31);
  CHECK(ubp::submonoid_intersection(s31, s31) == s31);
  CHECK_THROWS_AS(ubp::submonoid_union(s31, Submonoid::group(5)), ubp::Error);
}

TEST_CASE("the submonoid lattices for k = 4, 5, 6") {
  auto const l4 = ubp::all_submonoids(4);
  CHECK(sizes(l4) == std::vector<std::uint64_t>{24, 25, 41, 43, 59, 131});
  std::vector<std::string> labels;
  for (auto const& s : l4) {
    labels.push_back(s.label());
  }
  CHECK(labels == std::vector<std::string>{"\xe2\x88\x85", "4", "31", "22", "31, 22", "211"});

  auto const l5 = ubp::all_submonoids(5);
  CHECK(sizes(l5) == std::vector<std::uint64_t>{120, 121, 146, 221, 246, 346, 446, 696, 896, 1496});

  auto const l6 = ubp::all_submonoids(6);
  CHECK(l6.size() == 31);
  CHECK(l6.back().size() == 22482);
  CHECK(l6.front().size() == 720);

  for (int k = 0; k <= 10; ++k) {
    CHECK(ubp::count_submonoids(k) == ubp::all_submonoids(k).size());
  }
  try {
    ubp::all_submonoids(10, 1000);
    FAIL("listing ran above its bound");
  } catch (ubp::Error const& e) {
    CHECK(e.kind() == ubp::error_kind::bound_exceeded);
  }
}

TEST_CASE("lattice exports") {
  auto const l4 = ubp::all_submonoids(4);
  auto const j  = ubp::to_json(l4, 4);
  CHECK(j["submonoids"].size() == 6);
  CHECK(j["submonoids"][4].dump() == R"({"label":"31, 22","size":59,"downset":["4","3,1","2,2"]})");
  auto const dot = ubp::to_dot(l4, 4);
  CHECK(dot.rfind("digraph \"submonoids_4\" {\n", 0) == 0);
  CHECK(dot.find("  n4 [label=\"31, 22\\n59\"];\n") != std::string::npos);
  // Inclusion covers of the k = 4 lattice: 0-1, 1-2, 1-3, 2-4, 3-4, 4-5.
  auto const covers = ubp::inclusion_covers(l4);
  CHECK(std::set<std::pair<std::size_t, std::size_t>>(covers.begin(), covers.end())
        == std::set<std::pair<std::size_t, std::size_t>>{{0, 1}, {1, 2}, {1, 3}, {2, 4}, {3, 4}, {4, 5}});
}

TEST_CASE("verify_closure") {
  for (int k = 1; k <= 5; ++k) {
    for (auto const& s : ubp::all_submonoids(k)) {
      CHECK(ubp::verify_closure(s));
    }
  }
  CHECK_FALSE(ubp::verify_closure(4, {P("2,2")}));
  CHECK(ubp::verify_closure(Submonoid::full(6)));
  CHECK_THROWS_AS(ubp::verify_closure(Submonoid::full(7)), ubp::Error);
  CHECK(ubp::verify_closure(Submonoid::full(7), 7));
}

TEST_CASE("unions of J-classes are submonoids exactly for downsets, k = 4, 5") {
  for (int k = 4; k <= 5; ++k) {
    auto const nodes = ubp::poset_nodes(k);
    std::set<std::vector<IntegerPartition>> expected;
    for (auto const& s : ubp::all_submonoids(k)) {
      expected.insert(s.downset());
    }
    std::set<std::vector<IntegerPartition>> closed_by_elements;
    std::set<std::vector<IntegerPartition>> closed_by_joins;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << nodes.size()); ++mask) {
      std::vector<IntegerPartition> classes;
      for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (mask >> i & 1) {
          classes.push_back(nodes[i]);
        }
      }
      if (ubp::is_product_closed(ubp::members_of(k, classes))) {
        closed_by_elements.insert(classes);
      }
      if (ubp::verify_closure(k, classes)) {
        closed_by_joins.insert(classes);
      }
    }
    CHECK(closed_by_elements == expected);
    CHECK(closed_by_joins == expected);
  }
}

TEST_CASE("unions are closed and the lattice is distributive") {
  for (int k = 1; k <= 6; ++k) {
    auto const l = ubp::all_submonoids(k);
    for (auto const& a : l) {
      for (auto const& b : l) {
        REQUIRE(ubp::verify_closure(ubp::submonoid_union(a, b)));
      }
    }
  }
  for (int k = 1; k <= 5; ++k) {
    auto const l = ubp::all_submonoids(k);
    for (auto const& a : l) {
      for (auto const& b : l) {
        for (auto const& c : l) {
          using ubp::submonoid_intersection;
          using ubp::submonoid_union;
          REQUIRE(submonoid_intersection(a, submonoid_union(b, c))
                  == submonoid_union(submonoid_intersection(a, b), submonoid_intersection(a, c)));
          REQUIRE(submonoid_union(a, submonoid_intersection(b, c))
                  == submonoid_intersection(submonoid_union(a, b), submonoid_union(a, c)));
        }
      }
    }
  }
}

TEST_CASE("counting submonoids") {
  std::vector<std::uint64_t> const n{1, 2, 3, 6, 10, 31, 63, 287, 1099, 8640, 62658, 1546891};
  for (int k = 1; k <= 12; ++k) {
    CHECK(ubp::count_submonoids(k) == n[k - 1]);
  }
  for (int k = 8; k <= 11; ++k) {
    auto const one = ubp::count_submonoids(k, 1);
    CHECK(ubp::count_submonoids(k, 2) == one);
    CHECK(ubp::count_submonoids(k, 5) == one);
  }
}

TEST_CASE("downset counting agrees with brute force on random posets") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 300; ++trial) {
    std::size_t const n       = 1 + trial % 16;
    double const      density = 0.05 + 0.1 * (trial % 6);
    auto const        rel     = random_poset(rng, n, density);
    INFO("trial " << trial);
    REQUIRE(ubp::count_downsets(rel) == brute_force_downsets(rel));
    REQUIRE(ubp::count_downsets(rel, 3) == brute_force_downsets(rel));
  }
  CHECK(ubp::count_downsets({}) == 1);
}

TEST_CASE("downset counting beyond 64 bits") {
  // An antichain of 100 nodes and 70 disjoint two-element chains.
  std::vector<std::vector<char>> anti(100, std::vector<char>(100, 0));
  for (std::size_t i = 0; i < 100; ++i) {
    anti[i][i] = 1;
  }
  CHECK(ubp::count_downsets(anti) == ubp::BigInt(1) << 100);

  std::vector<std::vector<char>> chains(140, std::vector<char>(140, 0));
  for (std::size_t i = 0; i < 140; ++i) {
    chains[i][i] = 1;
    if (i % 2 == 0) {
      chains[i][i + 1] = 1;
    }
  }
  ubp::BigInt expected = 1;
  for (int i = 0; i < 70; ++i) {
    expected *= 3;
  }
  CHECK(ubp::count_downsets(chains) == expected);
  CHECK(ubp::count_downsets(chains, 4) == expected);
}
