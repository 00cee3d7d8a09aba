#ifndef UBP_SUBMONOIDS_HPP_
#define UBP_SUBMONOIDS_HPP_

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <deque>
#include <functional>
#include <set>
#include <stdexcept>
#include <string>
#include <thread>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "json.hpp"

#include "bigint.hpp"
#include "diagrams.hpp"
#include "exception.hpp"
#include "order.hpp"
#include "partitions.hpp"

namespace ubp {

  // A submonoid of U_k containing S_k, held as the downset I of
  // (P_k \ {1^k}, preceq) with S = S_k u (union of J_mu for mu in I).
  class Submonoid {
   public:
    Submonoid() = default;

    static Submonoid from_downset(int k, std::vector<IntegerPartition> const& ideal) {
      std::set<IntegerPartition> members;
      for (auto const& mu : ideal) {
        if (mu.size() != k) {
          throw Error(error_kind::size_mismatch,
                      "\"" + mu.to_string() + "\" is not a partition of " + std::to_string(k));
        }
        if (mu.is_all_ones()) {
          throw Error(error_kind::contains_all_ones, "\"" + mu.to_string() + "\"");
        }
        members.insert(mu);
      }
      auto const nodes = poset_nodes(k);
      for (auto const& lambda : members) {
        for (auto const& mu : nodes) {
          if (members.count(mu) == 0 && preceq(mu, lambda)) {
            throw Error(error_kind::not_a_downset,
                        "\"" + mu.to_string() + "\" precedes \"" + lambda.to_string()
                            + "\" but is missing");
          }
        }
      }
      return Submonoid(k, members);
    }

    // The symmetric group S_k itself.
    static Submonoid group(int k) {
      return Submonoid(k, {});
    }

    static Submonoid full(int k) {
      auto const nodes = poset_nodes(k);
      return Submonoid(k, std::set<IntegerPartition>(nodes.begin(), nodes.end()));
    }

    int k() const noexcept {
      return _k;
    }

    // Reverse-lexicographic order.
    std::vector<IntegerPartition> const& downset() const noexcept {
      return _downset;
    }

    std::vector<IntegerPartition> const& maximal_antichain() const noexcept {
      return _antichain;
    }

    BigInt const& size() const noexcept {
      return _size;
    }

    bool is_group() const noexcept {
      return _downset.empty();
    }

    // Whether J_mu is contained; J_{1^k} = S_k always is.
    bool contains_class(IntegerPartition const& mu) const {
      return mu.is_all_ones()
             || std::binary_search(_downset.begin(), _downset.end(), mu, reverse_lex_less());
    }

    bool contains(UniformBlockPermutation const& x) const {
      return x.degree() == _k && contains_class(x.type());
    }

    // Maximal elements, comma-separated, digit strings when possible.
    std::string label() const {
      if (_antichain.empty()) {
        return "\xe2\x88\x85";  // U+2205 EMPTY SET
      }
      std::string out;
      for (std::size_t i = 0; i < _antichain.size(); ++i) {
        out += (i == 0 ? "" : ", ") + _antichain[i].label();
      }
      return out;
    }

    friend bool operator==(Submonoid const& x, Submonoid const& y) {
      return x._k == y._k && x._downset == y._downset;
    }

   private:
    Submonoid(int k, std::set<IntegerPartition> const& members)
        : _k(k), _downset(members.begin(), members.end()) {
      std::sort(_downset.begin(), _downset.end(), reverse_lex_less());
      for (auto const& lambda : _downset) {
        bool maximal = true;
        for (auto const& other : _downset) {
          if (other != lambda && preceq(lambda, other)) {
            maximal = false;
            break;
          }
        }
        if (maximal) {
          _antichain.push_back(lambda);
        }
      }
      _size = factorial(static_cast<unsigned>(std::max(k, 0)));
      for (auto const& mu : _downset) {
        _size += j_class_size(k, mu);
      }
    }

    int                           _k = 0;
    std::vector<IntegerPartition> _downset;
    std::vector<IntegerPartition> _antichain;
    BigInt                        _size = 1;
  };

  // <S_k, e_pi>: the downset generated by type(pi). For type 1^k this is
  // S_k itself (check is_group()).
  inline Submonoid principal(int k, SetPartition const& pi) {
    if (pi.ground_size() != k) {
      throw Error(error_kind::size_mismatch, "principal: ground size differs from k");
    }
    auto const lambda = type_of(pi);
    if (lambda.is_all_ones()) {
      return Submonoid::group(k);
    }
    std::vector<IntegerPartition> ideal;
    for (auto const& mu : poset_nodes(k)) {
      if (preceq(mu, lambda)) {
        ideal.push_back(mu);
      }
    }
    return Submonoid::from_downset(k, ideal);
  }

  inline Submonoid submonoid_union(Submonoid const& a, Submonoid const& b) {
    if (a.k() != b.k()) {
      throw Error(error_kind::size_mismatch, "union: different k");
    }
    std::vector<IntegerPartition> ideal(a.downset());
    ideal.insert(ideal.end(), b.downset().begin(), b.downset().end());
    return Submonoid::from_downset(a.k(), ideal);
  }

  inline Submonoid submonoid_intersection(Submonoid const& a, Submonoid const& b) {
    if (a.k() != b.k()) {
      throw Error(error_kind::size_mismatch, "intersection: different k");
    }
    std::vector<IntegerPartition> ideal;
    for (auto const& mu : a.downset()) {
      if (b.contains_class(mu)) {
        ideal.push_back(mu);
      }
    }
    return Submonoid::from_downset(a.k(), ideal);
  }

  ////////////////////////////////////////////////////////////////////////
  // Brute-force closures over elements
  ////////////////////////////////////////////////////////////////////////

  constexpr int default_generation_bound = 5;

  // The submonoid generated by the identity and the generators, by closing
  // under right multiplication by generators.
  inline std::unordered_set<UniformBlockPermutation> generated_by(
      int k, std::vector<UniformBlockPermutation> const& generators,
      int bound = default_generation_bound) {
    if (k > bound) {
      throw Error(error_kind::bound_exceeded,
                  "generated_by: k = " + std::to_string(k) + " > " + std::to_string(bound));
    }
    for (auto const& g : generators) {
      if (g.degree() != k) {
        throw Error(error_kind::size_mismatch, "generated_by: generator of wrong degree");
      }
    }
    std::unordered_set<UniformBlockPermutation> seen{UniformBlockPermutation::identity(k)};
    std::deque<UniformBlockPermutation>         queue{UniformBlockPermutation::identity(k)};
    while (!queue.empty()) {
      auto const x = queue.front();
      queue.pop_front();
      for (auto const& g : generators) {
        auto y = multiply(x, g);
        if (seen.insert(y).second) {
          queue.push_back(std::move(y));
        }
      }
    }
    return seen;
  }

  // Every element of S_k and of J_mu for each listed mu.
  inline std::vector<UniformBlockPermutation> members_of(int k,
                                                         std::vector<IntegerPartition> const& classes) {
    auto out = enumerate_U(k, IntegerPartition::ones(k));
    for (auto const& mu : classes) {
      if (mu.is_all_ones()) {
        continue;
      }
      auto j = enumerate_U(k, mu);
      out.insert(out.end(), j.begin(), j.end());
    }
    return out;
  }

  inline std::vector<UniformBlockPermutation> members_of(Submonoid const& s) {
    return members_of(s.k(), s.downset());
  }

  // xy in the set for all x, y in the set.
  inline bool is_product_closed(std::vector<UniformBlockPermutation> const& elements) {
    std::unordered_set<UniformBlockPermutation> set(elements.begin(), elements.end());
    for (auto const& x : elements) {
      for (auto const& y : elements) {
        if (set.count(multiply(x, y)) == 0) {
          return false;
        }
      }
    }
    return true;
  }

  ////////////////////////////////////////////////////////////////////////
  // Closure through idempotent joins
  ////////////////////////////////////////////////////////////////////////

  constexpr int default_verification_bound = 6;

  // Whether S_k u (union of J_mu, mu in classes) is closed under product.
  // Since (tau e_pi)(sigma e_gamma) = tau sigma e_{sigma^{-1}(pi) v gamma},
  // this holds iff type(pi v gamma) lies in the set for all pi, gamma whose
  // types lie in the set. Relabelling both by a common permutation lets pi
  // run over one representative per type.
  inline bool verify_closure(int k, std::vector<IntegerPartition> const& classes,
                             int bound = default_verification_bound) {
    if (k > bound) {
      throw Error(error_kind::bound_exceeded,
                  "verify_closure: k = " + std::to_string(k) + " > " + std::to_string(bound));
    }
    std::set<IntegerPartition> types(classes.begin(), classes.end());
    types.insert(IntegerPartition::ones(k));
    for (auto const& mu : types) {
      if (mu.size() != k) {
        throw Error(error_kind::size_mismatch, "verify_closure: \"" + mu.to_string() + "\"");
      }
    }
    for (auto const& mu : types) {
      auto const pi = SetPartition::consecutive(mu);
      for (auto const& nu : types) {
        bool ok = true;
        for_each_set_partition(k, nu, [&](SetPartition const& gamma) {
          if (ok && types.count(type_of(join(pi, gamma))) == 0) {
            ok = false;
          }
        });
        if (!ok) {
          return false;
        }
      }
    }
    return true;
  }

  inline bool verify_closure(Submonoid const& s, int bound = default_verification_bound) {
    return verify_closure(s.k(), s.downset(), bound);
  }

  ////////////////////////////////////////////////////////////////////////
  // Counting downsets
  ////////////////////////////////////////////////////////////////////////

  namespace detail {
    struct overflow : std::exception {};

    template <typename Value>
    struct arithmetic;

    template <>
    struct arithmetic<std::uint64_t> {
      static std::uint64_t add(std::uint64_t a, std::uint64_t b) {
        std::uint64_t r;
        if (__builtin_add_overflow(a, b, &r)) {
          throw overflow();
        }
        return r;
      }
      static std::uint64_t mul(std::uint64_t a, std::uint64_t b) {
        std::uint64_t r;
        if (__builtin_mul_overflow(a, b, &r)) {
          throw overflow();
        }
        return r;
      }
      static std::uint64_t pow2(std::size_t n) {
        if (n >= 64) {
          throw overflow();
        }
        return std::uint64_t(1) << n;
      }
    };

    template <>
    struct arithmetic<BigInt> {
      static BigInt add(BigInt const& a, BigInt const& b) {
        return a + b;
      }
      static BigInt mul(BigInt const& a, BigInt const& b) {
        return a * b;
      }
      static BigInt pow2(std::size_t n) {
        return BigInt(1) << n;
      }
    };

    template <std::size_t W>
    struct SetHash {
      std::size_t operator()(std::array<std::uint64_t, W> const& s) const noexcept {
        std::size_t h = 0x9e3779b97f4a7c15ULL;
        for (auto w : s) {
          h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        }
        return h;
      }
    };

    // Number of downsets of a poset given by up-sets and down-sets of each
    // node, by N(P) = N(P \ up(x)) + N(P \ down(x)), with the pivot x of
    // largest comparability degree, memoized on the remaining node set and
    // split into connected components of the comparability graph.
    template <std::size_t W, typename Value>
    class DownsetCounter {
     public:
      using Set = std::array<std::uint64_t, W>;

      explicit DownsetCounter(std::vector<std::vector<char>> const& rel) : _n(rel.size()) {
        _up.resize(_n);
        _down.resize(_n);
        _adj.resize(_n);
        for (std::size_t i = 0; i < _n; ++i) {
          for (std::size_t j = 0; j < _n; ++j) {
            if (rel[i][j]) {
              set_bit(_up[i], j);
              set_bit(_down[j], i);
            }
          }
        }
        for (std::size_t i = 0; i < _n; ++i) {
          for (std::size_t w = 0; w < W; ++w) {
            _adj[i][w] = _up[i][w] | _down[i][w];
          }
          _adj[i][i / 64] &= ~(std::uint64_t(1) << (i % 64));
        }
      }

      Set all() const {
        Set s{};
        for (std::size_t i = 0; i < _n; ++i) {
          set_bit(s, i);
        }
        return s;
      }

      Set const& up(std::size_t i) const {
        return _up[i];
      }

      Set const& down(std::size_t i) const {
        return _down[i];
      }

      // Pivot with the largest number of comparable nodes inside s.
      std::pair<std::size_t, std::size_t> pivot(Set const& s) const {
        std::size_t best = _n, best_degree = 0;
        for_each(s, [&](std::size_t i) {
          std::size_t d = 0;
          for (std::size_t w = 0; w < W; ++w) {
            d += static_cast<std::size_t>(std::popcount(_adj[i][w] & s[w]));
          }
          if (best == _n || d > best_degree) {
            best        = i;
            best_degree = d;
          }
        });
        return {best, best_degree};
      }

      Value count(Set const& s) {
        std::size_t const n = size(s);
        if (n == 0) {
          return Value(1);
        }
        if (n == 1) {
          return Value(2);
        }
        if (auto it = _memo.find(s); it != _memo.end()) {
          return it->second;
        }
        auto const [x, degree] = pivot(s);
        Value      result;
        if (degree == 0) {
          result = arithmetic<Value>::pow2(n);
        } else {
          Set const comp = component(s, x);
          if (comp != s) {
            Set rest;
            for (std::size_t w = 0; w < W; ++w) {
              rest[w] = s[w] & ~comp[w];
            }
            result = arithmetic<Value>::mul(count(comp), count(rest));
          } else {
            result = arithmetic<Value>::add(count(minus(s, _up[x])), count(minus(s, _down[x])));
          }
        }
        _memo.emplace(s, result);
        return result;
      }

      static Set minus(Set const& a, Set const& b) {
        Set r;
        for (std::size_t w = 0; w < W; ++w) {
          r[w] = a[w] & ~b[w];
        }
        return r;
      }

      static std::size_t size(Set const& s) {
        std::size_t n = 0;
        for (auto w : s) {
          n += static_cast<std::size_t>(std::popcount(w));
        }
        return n;
      }

     private:
      static void set_bit(Set& s, std::size_t i) {
        s[i / 64] |= std::uint64_t(1) << (i % 64);
      }

      template <typename F>
      static void for_each(Set const& s, F&& f) {
        for (std::size_t w = 0; w < W; ++w) {
          std::uint64_t bits = s[w];
          while (bits != 0) {
            f(w * 64 + static_cast<std::size_t>(std::countr_zero(bits)));
            bits &= bits - 1;
          }
        }
      }

      // Connected component of x in the comparability graph restricted to s.
      Set component(Set const& s, std::size_t x) const {
        Set comp{}, frontier{};
        set_bit(comp, x);
        set_bit(frontier, x);
        bool grew = true;
        while (grew) {
          Set next{};
          for_each(frontier, [&](std::size_t i) {
            for (std::size_t w = 0; w < W; ++w) {
              next[w] |= _adj[i][w] & s[w] & ~comp[w];
            }
          });
          grew = false;
          for (std::size_t w = 0; w < W; ++w) {
            comp[w] |= next[w];
            grew = grew || next[w] != 0;
          }
          frontier = next;
        }
        return comp;
      }

      std::size_t                                  _n;
      std::vector<Set>                             _up, _down, _adj;
      std::unordered_map<Set, Value, SetHash<W>> _memo;
    };

    // Splits the full node set into independent subproblems by branching on
    // pivots `depth` times; their counts sum to the total.
    template <std::size_t W, typename Value>
    Value count_downsets_split(std::vector<std::vector<char>> const& rel, unsigned threads,
                               std::function<void(std::string const&)> const& progress) {
      using Counter = DownsetCounter<W, Value>;
      using Set     = typename Counter::Set;
      Counter          root(rel);
      std::vector<Set> tasks{root.all()};
      if (threads > 1) {
        unsigned depth = 0;
        while ((1u << depth) < 4 * threads) {
          ++depth;
        }
        for (unsigned d = 0; d < depth; ++d) {
          std::vector<Set> next;
          for (auto const& s : tasks) {
            auto const [x, degree] = root.pivot(s);
            if (Counter::size(s) == 0 || degree == 0) {
              next.push_back(s);
              continue;
            }
            next.push_back(Counter::minus(s, root.up(x)));
            next.push_back(Counter::minus(s, root.down(x)));
          }
          tasks = std::move(next);
        }
      }
      std::vector<Value> results(tasks.size());
      auto               run = [&](unsigned w, unsigned stride) {
        Counter counter(rel);
        for (std::size_t t = w; t < tasks.size(); t += stride) {
          results[t] = counter.count(tasks[t]);
        }
      };
      if (tasks.size() == 1) {
        results[0] = root.count(tasks[0]);
      } else {
        std::vector<std::thread>      pool;
        std::vector<std::exception_ptr> errors(threads);
        for (unsigned w = 0; w < threads; ++w) {
          pool.emplace_back([&, w]() {
            try {
              run(w, threads);
            } catch (...) {
              errors[w] = std::current_exception();
            }
          });
        }
        for (auto& th : pool) {
          th.join();
        }
        for (auto const& e : errors) {
          if (e) {
            std::rethrow_exception(e);
          }
        }
      }
      Value total(0);
      for (std::size_t t = 0; t < results.size(); ++t) {
        total = arithmetic<Value>::add(total, results[t]);
      }
      if (progress) {
        progress(std::to_string(tasks.size()) + " subproblem(s) solved");
      }
      return total;
    }

    template <std::size_t W>
    BigInt count_downsets_width(std::vector<std::vector<char>> const& rel, unsigned threads,
                                std::function<void(std::string const&)> const& progress) {
      try {
        return BigInt(count_downsets_split<W, std::uint64_t>(rel, threads, progress));
      } catch (overflow const&) {
        if (progress) {
          progress("64-bit overflow, recounting with big integers");
        }
        return count_downsets_split<W, BigInt>(rel, threads, progress);
      }
    }
  }  // namespace detail

  // Number of downsets (equivalently antichains) of the poset whose
  // relation matrix is rel.
  inline BigInt count_downsets(std::vector<std::vector<char>> const& rel, unsigned threads = 1,
                               std::function<void(std::string const&)> const& progress = {}) {
    threads              = std::max(1u, threads);
    std::size_t const n = rel.size();
    if (n <= 64) {
      return detail::count_downsets_width<1>(rel, threads, progress);
    } else if (n <= 128) {
      return detail::count_downsets_width<2>(rel, threads, progress);
    } else if (n <= 256) {
      return detail::count_downsets_width<4>(rel, threads, progress);
    } else if (n <= 512) {
      return detail::count_downsets_width<8>(rel, threads, progress);
    }
    throw Error(error_kind::bound_exceeded,
                "count_downsets: " + std::to_string(n) + " nodes (at most 512 supported)");
  }

  // n_k: the number of submonoids of U_k containing S_k.
  inline BigInt count_submonoids(int k, unsigned threads = 1,
                                 std::function<void(std::string const&)> const& progress = {}) {
    if (k < 0) {
      throw Error(error_kind::invalid_argument, "k must be nonnegative");
    }
    return count_downsets(relation_matrix(poset_nodes(k)), threads, progress);
  }

  constexpr std::size_t default_submonoid_listing_bound = 100000;

  // Every downset, ordered by (size, label).
  inline std::vector<Submonoid> all_submonoids(int k,
                                               std::size_t bound = default_submonoid_listing_bound) {
    if (k < 0) {
      throw Error(error_kind::invalid_argument, "k must be nonnegative");
    }
    auto const nodes = poset_nodes(k);
    auto const rel   = relation_matrix(nodes);
    if (auto const n = count_downsets(rel); n > bound) {
      throw Error(error_kind::bound_exceeded,
                  "all_submonoids: " + n.str() + " submonoids exceed the listing bound "
                      + std::to_string(bound));
    }
    // Nodes are a linear extension, so a node may join once everything
    // below it has been decided.
    std::vector<Submonoid> out;
    std::vector<char>      in(nodes.size(), 0);
    std::function<void(std::size_t)> grow = [&](std::size_t i) {
      if (i == nodes.size()) {
        std::vector<IntegerPartition> ideal;
        for (std::size_t j = 0; j < nodes.size(); ++j) {
          if (in[j]) {
            ideal.push_back(nodes[j]);
          }
        }
        out.push_back(Submonoid::from_downset(k, ideal));
        return;
      }
      grow(i + 1);
      bool allowed = true;
      for (std::size_t j = 0; j < i && allowed; ++j) {
        allowed = !rel[j][i] || in[j];
      }
      if (allowed) {
        in[i] = 1;
        grow(i + 1);
        in[i] = 0;
      }
    };
    grow(0);
    std::vector<std::pair<std::pair<BigInt, std::string>, std::size_t>> keys;
    for (std::size_t i = 0; i < out.size(); ++i) {
      keys.push_back({{out[i].size(), out[i].label()}, i});
    }
    std::sort(keys.begin(), keys.end());
    std::vector<Submonoid> sorted;
    for (auto const& key : keys) {
      sorted.push_back(std::move(out[key.second]));
    }
    return sorted;
  }

  // Covering pairs (i, j) of the inclusion order on a list of submonoids:
  // the downset of j is that of i plus one partition.
  inline std::vector<std::pair<std::size_t, std::size_t>> inclusion_covers(
      std::vector<Submonoid> const& lattice) {
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (std::size_t i = 0; i < lattice.size(); ++i) {
      for (std::size_t j = 0; j < lattice.size(); ++j) {
        auto const& a = lattice[i].downset();
        auto const& b = lattice[j].downset();
        if (b.size() != a.size() + 1) {
          continue;
        }
        if (std::all_of(a.begin(), a.end(),
                        [&](IntegerPartition const& mu) { return lattice[j].contains_class(mu); })) {
          edges.emplace_back(i, j);
        }
      }
    }
    return edges;
  }

  inline nlohmann::ordered_json size_to_json(BigInt const& n) {
    if (fits_uint64(n)) {
      return nlohmann::ordered_json(static_cast<std::uint64_t>(n));
    }
    return nlohmann::ordered_json(n.str());
  }

  inline nlohmann::ordered_json to_json(std::vector<Submonoid> const& lattice, int k) {
    nlohmann::ordered_json j;
    j["k"]    = k;
    auto list = nlohmann::ordered_json::array();
    for (auto const& s : lattice) {
      nlohmann::ordered_json entry;
      entry["label"] = s.label();
      entry["size"]  = size_to_json(s.size());
      auto downset   = nlohmann::ordered_json::array();
      for (auto const& mu : s.downset()) {
        downset.push_back(mu.to_string());
      }
      entry["downset"] = std::move(downset);
      list.push_back(std::move(entry));
    }
    j["submonoids"] = std::move(list);
    return j;
  }

  inline std::string to_dot(std::vector<Submonoid> const& lattice, int k) {
    std::string out = "digraph \"submonoids_" + std::to_string(k) + "\" {\n";
    for (std::size_t i = 0; i < lattice.size(); ++i) {
      out += "  n" + std::to_string(i) + " [label=\"" + lattice[i].label() + "\\n"
             + lattice[i].size().str() + "\"];\n";
    }
    for (auto const& [lo, hi] : inclusion_covers(lattice)) {
      out += "  n" + std::to_string(lo) + " -> n" + std::to_string(hi) + ";\n";
    }
    return out + "}\n";
  }

}  // namespace ubp

#endif  // UBP_SUBMONOIDS_HPP_
