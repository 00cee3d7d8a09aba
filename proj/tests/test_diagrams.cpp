#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>

#include "oracles.hpp"
#include "ubp/diagrams.hpp"

using ubp::IntegerPartition;
using ubp::Permutation;
using ubp::SetPartition;
using ubp::UniformBlockPermutation;
using U = UniformBlockPermutation;

namespace {

  IntegerPartition P(std::string_view s) {
    return IntegerPartition::parse(s);
  }

  U element(std::string const& json) {
    return ubp::element_from_json(json);
  }

  // Blocks as sorted signed point lists, the shape produced by the oracle.
  std::vector<std::vector<int>> signed_blocks(U const& x) {
    std::vector<std::vector<int>> out;
    for (auto const& [top, bot] : x.blocks()) {
      std::vector<int> b(top.begin(), top.end());
      for (int s : bot) {
        b.push_back(-s);
      }
      std::sort(b.begin(), b.end());
      out.push_back(b);
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  U const example_pi = element(
      R"({"k":9,"blocks":[[1,3,-1,-2],[2,-4],[4,6,-3,-6],[5,-7],[7,8,9,-5,-8,-9]]})");
  U const product_pi = element(
      R"({"k":9,"blocks":[[1,2,7,-2,-8,-9],[3,-1],[4,8,-3,-5],[5,9,-4,-6],[6,-7]]})");
  U const product_tau = element(
      R"({"k":9,"blocks":[[1,-2],[2,3,-1,-4],[4,6,-3,-5],[5,-9],[7,8,9,-6,-7,-8]]})");
  U const product_pitau = element(
      R"({"k":9,"blocks":[[1,2,4,6,7,8,-1,-4,-6,-7,-8,-9],[3,-2],[5,9,-3,-5]]})");

}  // namespace

TEST_CASE("construction validates uniformity and coverage") {
  CHECK(U::from_blocks(2, {{{1}, {1}}, {{2}, {2}}}) == U::identity(2));
  CHECK(example_pi.type() == P("3,2,2,1,1"));
  try {
    U::from_blocks(2, {{{1, 2}, {1}}});
    FAIL("accepted a non-uniform block");
  } catch (ubp::Error const& e) {
    CHECK(e.kind() == ubp::error_kind::non_uniform_block);
  }
  try {
    U::from_blocks(2, {{{1}, {1}}, {{1}, {2}}});
    FAIL("accepted overlapping blocks");
  } catch (ubp::Error const& e) {
    CHECK(e.kind() == ubp::error_kind::not_a_partition);
  }
  CHECK_THROWS_AS(U::from_blocks(2, {{{1}, {1}}}), ubp::Error);
  CHECK_THROWS_AS(U::from_blocks(2, {{{1}, {3}}, {{2}, {2}}}), ubp::Error);
}

TEST_CASE("top, bot and type of the nine-point example") {
  CHECK(ubp::top(example_pi) == SetPartition::parse("{{1,3},{2},{4,6},{5},{7,8,9}}"));
  CHECK(ubp::bot(example_pi) == SetPartition::parse("{{1,2},{4},{3,6},{7},{5,8,9}}"));
  CHECK(ubp::type_of(ubp::top(example_pi)) == P("3,2,2,1,1"));
}

TEST_CASE("the nine-point product") {
  CHECK(ubp::multiply(product_pi, product_tau) == product_pitau);
  CHECK(ubp::to_json(ubp::multiply(product_pi, product_tau)).dump()
        == R"({"k":9,"blocks":[[1,2,4,6,7,8,-1,-4,-6,-7,-8,-9],[3,-2],[5,9,-3,-5]]})");
}

TEST_CASE("multiply agrees with a graph search on the stacked diagram") {
  for (int k = 0; k <= 3; ++k) {
    auto const all = ubp::enumerate_U(k);
    for (auto const& x : all) {
      for (auto const& y : all) {
        REQUIRE(signed_blocks(ubp::multiply(x, y))
                == oracle::diagram_product_blocks(k, x.labels(), y.labels()));
      }
    }
  }
  std::mt19937 rng(11);
  auto const   all = ubp::enumerate_U(5);
  std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
  for (int n = 0; n < 20000; ++n) {
    auto const& x = all[pick(rng)];
    auto const& y = all[pick(rng)];
    REQUIRE(signed_blocks(ubp::multiply(x, y))
            == oracle::diagram_product_blocks(5, x.labels(), y.labels()));
  }
  CHECK_THROWS_AS(ubp::multiply(U::identity(2), U::identity(3)), ubp::Error);
}

TEST_CASE("unit law and associativity in U_3 exhaustively") {
  auto const all = ubp::enumerate_U(3);
  REQUIRE(all.size() == 16);
  for (auto const& x : all) {
    CHECK(ubp::multiply(U::identity(3), x) == x);
    CHECK(ubp::multiply(x, U::identity(3)) == x);
    for (auto const& y : all) {
      for (auto const& z : all) {
        REQUIRE(ubp::multiply(ubp::multiply(x, y), z) == ubp::multiply(x, ubp::multiply(y, z)));
      }
    }
  }
}

TEST_CASE("associativity on random triples in U_6") {
  auto const all = ubp::enumerate_U(6);
  REQUIRE(all.size() == 22482);
  std::mt19937                               rng(20240601);
  std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
  int                                        failures = 0;
  for (int n = 0; n < 100000; ++n) {
    auto const& x  = all[pick(rng)];
    auto const& y  = all[pick(rng)];
    auto const& z  = all[pick(rng)];
    auto const  xy = ubp::multiply(x, y);
    auto const  l  = ubp::multiply(xy, z);
    auto const  r  = ubp::multiply(x, ubp::multiply(y, z));
    if (l != r || xy.type() != ubp::type_of(ubp::bot(xy))) {
      ++failures;
    }
  }
  CHECK(failures == 0);
}

TEST_CASE("the type of a product is coarser than both factors, k <= 5") {
  for (int k = 1; k <= 5; ++k) {
    auto const all = ubp::enumerate_U(k);
    for (auto const& x : all) {
      for (auto const& y : all) {
        auto const t = ubp::multiply(x, y).type();
        REQUIRE(ubp::is_coarser(t, x.type()));
        REQUIRE(ubp::is_coarser(t, y.type()));
      }
    }
  }
}

TEST_CASE("permutations embed as the group of units") {
  CHECK(ubp::from_permutation(Permutation::identity(4)) == U::identity(4));
  auto const s3 = Permutation::all(3);
  for (auto const& s : s3) {
    for (auto const& r : s3) {
      CHECK(ubp::multiply(ubp::from_permutation(s), ubp::from_permutation(r))
            == ubp::from_permutation(ubp::compose(s, r)));
    }
  }
  for (int k = 0; k <= 4; ++k) {
    std::set<U> units;
    for (auto const& s : Permutation::all(k)) {
      auto const x = ubp::from_permutation(s);
      CHECK(x.is_unit());
      CHECK(ubp::top(x) == SetPartition::singletons(k));
      CHECK(ubp::bot(x) == SetPartition::singletons(k));
      units.insert(x);
    }
    CHECK(units.size() == oracle::factorial(k));
    auto const j = ubp::enumerate_U(k, IntegerPartition::ones(k));
    CHECK(std::set<U>(j.begin(), j.end()) == units);
  }
}

TEST_CASE("idempotents") {
  CHECK(ubp::idempotent_of(SetPartition::singletons(2)) == U::identity(2));
  auto const e = ubp::idempotent_of(SetPartition::parse("{{1,2},{3,4}}"));
  CHECK(ubp::to_json(e).dump() == R"({"k":4,"blocks":[[1,2,-1,-2],[3,4,-3,-4]]})");
  CHECK(ubp::multiply(e, e) == e);
  CHECK(e.is_idempotent());
  auto const all = ubp::set_partitions_of(4);
  for (auto const& p : all) {
    auto const ep = ubp::idempotent_of(p);
    CHECK(ubp::top(ep) == p);
    CHECK(ubp::bot(ep) == p);
    for (auto const& g : all) {
      REQUIRE(ubp::multiply(ep, ubp::idempotent_of(g)) == ubp::idempotent_of(ubp::join(p, g)));
    }
  }
  std::size_t idempotents = 0;
  for (auto const& x : ubp::enumerate_U(4)) {
    idempotents += ubp::multiply(x, x) == x ? 1 : 0;
  }
  CHECK(idempotents == all.size());
}

TEST_CASE("conjugating an idempotent by a permutation relabels its blocks") {
  // tau e_pi tau^-1 is e of the elementwise image of pi under tau. Read
  // with permutations acting on the right, the same element is written
  // e of the image of pi under tau^-1.
  for (auto const& tau : Permutation::all(3)) {
    for (auto const& pi : ubp::set_partitions_of(3)) {
      auto const conj = ubp::multiply(
          ubp::from_permutation(tau),
          ubp::multiply(ubp::idempotent_of(pi), ubp::from_permutation(tau.inverse())));
      CHECK(conj == ubp::idempotent_of(ubp::apply_permutation(tau, pi)));
      auto const inverse_conj = ubp::multiply(
          ubp::from_permutation(tau.inverse()),
          ubp::multiply(ubp::idempotent_of(pi), ubp::from_permutation(tau)));
      CHECK(inverse_conj == ubp::idempotent_of(ubp::apply_permutation(tau.inverse(), pi)));
    }
  }
}

TEST_CASE("factorization recomposes every element of U_4") {
  auto const [tau0, gamma0] = ubp::factorize(U::identity(3));
  CHECK(tau0.is_identity());
  CHECK(gamma0 == SetPartition::singletons(3));
  for (int k = 0; k <= 4; ++k) {
    for (auto const& x : ubp::enumerate_U(k)) {
      auto const [tau, gamma] = ubp::factorize(x);
      REQUIRE(gamma == ubp::bot(x));
      REQUIRE(ubp::multiply(ubp::from_permutation(tau), ubp::idempotent_of(gamma)) == x);
    }
  }
}

TEST_CASE("top and bottom types agree, k <= 6") {
  for (int k = 0; k <= 6; ++k) {
    for (auto const& x : ubp::enumerate_U(k)) {
      REQUIRE(ubp::type_of(ubp::top(x)) == ubp::type_of(ubp::bot(x)));
    }
  }
}

TEST_CASE("enumeration counts and J-classes") {
  std::vector<std::uint64_t> const counts{1, 1, 3, 16, 131, 1496, 22482, 426833};
  for (int k = 0; k <= 6; ++k) {
    auto const all = ubp::enumerate_U(k);
    CHECK(all.size() == counts[k]);
    CHECK(std::set<U>(all.begin(), all.end()).size() == all.size());
    ubp::BigInt total = 0;
    for (auto const& mu : ubp::partitions_of(k)) {
      auto const j = ubp::enumerate_U(k, mu);
      CHECK(ubp::BigInt(j.size()) == ubp::j_class_size(k, mu));
      for (auto const& x : j) {
        REQUIRE(x.type() == mu);
      }
      total += ubp::j_class_size(k, mu);
    }
    CHECK(total == counts[k]);
  }
  CHECK(ubp::j_class_size(7, P("7")) == 1);
  ubp::BigInt total7 = 0;
  for (auto const& mu : ubp::partitions_of(7)) {
    total7 += ubp::j_class_size(7, mu);
  }
  CHECK(total7 == counts[7]);
  for (int k = 0; k <= 5; ++k) {
    CHECK(ubp::count_U(k) == oracle::uniform_count(k));
  }
  CHECK(ubp::enumerate_U(4, P("2,1,1")).size() == 72);
  CHECK(ubp::j_class_size(4, P("2,2")) == 18);
  CHECK(ubp::j_class_size(4, P("3,1")) == 16);
  CHECK(ubp::j_class_size(5, P("3,2")) == 100);
  CHECK_THROWS_AS(ubp::enumerate_U(4, P("2,1")), ubp::Error);
  CHECK_THROWS_AS(ubp::j_class_size(4, P("2,1")), ubp::Error);
}

TEST_CASE("enumeration order and thread independence") {
  for (int k = 0; k <= 6; ++k) {
    auto const one = ubp::enumerate_U(k, std::nullopt, 1);
    CHECK(one == ubp::enumerate_U(k, std::nullopt, 3));
    CHECK(one == ubp::enumerate_U(k, std::nullopt, 8));
  }
  auto const all = ubp::enumerate_U(4);
  for (std::size_t i = 1; i < all.size(); ++i) {
    if (all[i - 1].type() == all[i].type()) {
      CHECK(all[i - 1] < all[i]);
    } else {
      CHECK(ubp::reverse_lex_less{}(all[i - 1].type(), all[i].type()));
    }
  }
}

TEST_CASE("JSON round trip and errors") {
  for (auto const& x : ubp::enumerate_U(4)) {
    auto const text = ubp::to_json(x).dump();
    REQUIRE(element(text) == x);
    REQUIRE(ubp::to_json(element(text)).dump() == text);
  }
  // Blocks and entries in any order parse to the same element.
  CHECK(element(R"({"k":2,"blocks":[[-2,2],[-1,1]]})") == U::identity(2));
  for (auto const* bad : {R"({"k":2})", R"({"k":2,"blocks":[[1,0],[2,-2]]})", R"([1,2])",
                          R"({"k":2,"blocks":[[1,2,-1],[-2]]})", R"({"k":2,"blocks":[[1,-1]]})",
                          "not json"}) {
    CHECK_THROWS_AS(element(bad), ubp::Error);
  }
}
