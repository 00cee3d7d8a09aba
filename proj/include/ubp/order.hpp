#ifndef UBP_ORDER_HPP_
#define UBP_ORDER_HPP_

#include <algorithm>
#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <thread>
#include <unordered_set>
#include <utility>
#include <vector>

#include "json.hpp"

#include "bigint.hpp"
#include "exception.hpp"
#include "partitions.hpp"
#include "permutation.hpp"

namespace ubp {

  // mu <= lambda in the order induced by joins of set partitions of type
  // lambda. Decided by: mu is coarser than lambda and the smallest part > 1
  // of mu is at least that of lambda. 1^k is comparable only to itself.
  inline bool preceq(IntegerPartition const& mu, IntegerPartition const& lambda) {
    if (mu.size() != lambda.size()) {
      throw Error(error_kind::size_mismatch,
                  "preceq: |mu| = " + std::to_string(mu.size())
                      + ", |lambda| = " + std::to_string(lambda.size()));
    }
    if (mu == lambda) {
      return true;
    }
    if (mu.is_all_ones() || lambda.is_all_ones()) {
      return false;
    }
    return smallest_nontrivial_part(mu) >= smallest_nontrivial_part(lambda)
           && is_coarser(mu, lambda);
  }

  inline bool precedes(IntegerPartition const& mu, IntegerPartition const& lambda) {
    return mu != lambda && preceq(mu, lambda);
  }

  constexpr int default_oracle_bound = 6;

  // Every set partition that is a join of finitely many set partitions of
  // type lambda, found by saturating the seeds under joins with the seeds.
  inline std::unordered_set<SetPartition> join_closure(IntegerPartition const& lambda) {
    auto const                       seeds = set_partitions_of(lambda.size(), lambda);
    std::unordered_set<SetPartition> closure(seeds.begin(), seeds.end());
    std::vector<SetPartition>        frontier(seeds);
    while (!frontier.empty()) {
      std::vector<SetPartition> next;
      for (auto const& c : frontier) {
        for (auto const& s : seeds) {
          auto j = join(c, s);
          if (closure.insert(j).second) {
            next.push_back(std::move(j));
          }
        }
      }
      frontier = std::move(next);
    }
    return closure;
  }

  // Definitional test: some join of type-lambda set partitions has type mu.
  inline bool preceq_oracle(IntegerPartition const& mu, IntegerPartition const& lambda,
                            int oracle_bound = default_oracle_bound) {
    if (mu.size() != lambda.size()) {
      throw Error(error_kind::size_mismatch, "preceq_oracle: sizes differ");
    }
    if (lambda.size() > oracle_bound) {
      throw Error(error_kind::oracle_infeasible,
                  "k = " + std::to_string(lambda.size()) + " exceeds the oracle bound "
                      + std::to_string(oracle_bound));
    }
    auto const closure = join_closure(lambda);
    return std::any_of(closure.begin(), closure.end(),
                       [&mu](SetPartition const& p) { return type_of(p) == mu; });
  }

  ////////////////////////////////////////////////////////////////////////
  // Cover relations
  ////////////////////////////////////////////////////////////////////////

  // How a lower cover arises from lambda.
  struct CoverMove {
    enum class kind { merge_parts, merge_ones };
    kind             rule;
    int              first;   // merge_parts: larger merged part; merge_ones: s
    int              second;  // merge_parts: smaller merged part; merge_ones: s
    IntegerPartition result;
  };

  inline std::vector<CoverMove> lower_cover_moves(IntegerPartition const& lambda) {
    if (lambda.is_all_ones()) {
      throw Error(error_kind::invalid_argument,
                  "lower_covers: \"" + lambda.to_string() + "\" is 1^k");
    }
    std::vector<CoverMove>     moves;
    std::set<IntegerPartition> seen;
    auto const&                p = lambda.parts();
    // Merge two parts that are not both 1.
    for (std::size_t i = 0; i < p.size(); ++i) {
      for (std::size_t j = i + 1; j < p.size(); ++j) {
        if (p[i] == 1 && p[j] == 1) {
          continue;
        }
        std::vector<int> q;
        for (std::size_t r = 0; r < p.size(); ++r) {
          if (r != i && r != j) {
            q.push_back(p[r]);
          }
        }
        q.push_back(p[i] + p[j]);
        IntegerPartition mu(std::move(q));
        if (seen.insert(mu).second) {
          moves.push_back({CoverMove::kind::merge_parts, p[i], p[j], std::move(mu)});
        }
      }
    }
    // lambda = (..., s, 1^t) with t >= s >= 2: merge s ones into a new part s.
    int const s = smallest_nontrivial_part(lambda);
    int const t = lambda.multiplicity(1);
    if (t >= s) {
      std::vector<int> q(p.begin(), p.end() - s);
      q.push_back(s);
      IntegerPartition mu(std::move(q));
      if (seen.insert(mu).second) {
        moves.push_back({CoverMove::kind::merge_ones, s, s, std::move(mu)});
      }
    }
    return moves;
  }

  // {mu : mu is covered by lambda}.
  inline std::vector<IntegerPartition> lower_covers(IntegerPartition const& lambda) {
    std::vector<IntegerPartition> out;
    for (auto& m : lower_cover_moves(lambda)) {
      out.push_back(std::move(m.result));
    }
    std::sort(out.begin(), out.end(), reverse_lex_less());
    return out;
  }

  ////////////////////////////////////////////////////////////////////////
  // Join witnesses
  ////////////////////////////////////////////////////////////////////////

  namespace detail {
    // The permutation u with current v u(current) realizing move on a set
    // partition whose type is the partition the move starts from.
    inline Permutation witness_swap(SetPartition const& current, CoverMove const& move) {
      int const   k      = current.ground_size();
      auto const& blocks = current.blocks();
      if (move.rule == CoverMove::kind::merge_parts) {
        // Swap the largest point of a block of the larger size with the
        // smallest point of a different block of the other size.
        std::size_t bi = blocks.size(), bj = blocks.size();
        for (std::size_t b = 0; b < blocks.size() && bi == blocks.size(); ++b) {
          if (static_cast<int>(blocks[b].size()) == move.first) {
            bi = b;
          }
        }
        for (std::size_t b = 0; b < blocks.size() && bj == blocks.size(); ++b) {
          if (b != bi && static_cast<int>(blocks[b].size()) == move.second) {
            bj = b;
          }
        }
        return Permutation::transposition(k, blocks[bi].back(), blocks[bj].front());
      }
      // Exchange the points of a block of size s with s singletons.
      int const                s = move.first;
      std::vector<int> const*  big = nullptr;
      std::vector<int>         singles;
      for (auto const& b : blocks) {
        if (big == nullptr && static_cast<int>(b.size()) == s) {
          big = &b;
        } else if (b.size() == 1 && static_cast<int>(singles.size()) < s) {
          singles.push_back(b.front());
        }
      }
      auto images = Permutation::identity(k).images();
      for (int i = 0; i < s; ++i) {
        std::swap(images[(*big)[i] - 1], images[singles[i] - 1]);
      }
      return Permutation(std::move(images));
    }
  }  // namespace detail

  // Set partitions of type lambda whose join has type mu. Built along a
  // chain of covers from lambda down to mu: at each step the current witness
  // list W with join J is replaced by W + u(W), where u is a transposition
  // (merging two parts) or a product of s disjoint transpositions (merging s
  // singletons into a new block of size s), so J v u(J) has the next type.
  inline std::vector<SetPartition> join_witness(IntegerPartition const& mu,
                                                IntegerPartition const& lambda) {
    if (!preceq(mu, lambda)) {
      throw Error(error_kind::not_comparable,
                  "\"" + mu.to_string() + "\" is not below \"" + lambda.to_string() + "\"");
    }
    std::vector<SetPartition> witness{SetPartition::consecutive(lambda)};
    SetPartition              current = witness.front();
    IntegerPartition          nu      = lambda;
    while (nu != mu) {
      CoverMove const* step  = nullptr;
      auto const       moves = lower_cover_moves(nu);
      for (auto const& m : moves) {
        if (preceq(mu, m.result)) {
          step = &m;
          break;
        }
      }
      if (step == nullptr) {
        throw Error(error_kind::not_comparable, "no cover step towards \"" + mu.to_string() + "\"");
      }
      Permutation const u = detail::witness_swap(current, *step);
      std::size_t const n = witness.size();
      std::unordered_set<SetPartition> present(witness.begin(), witness.end());
      for (std::size_t i = 0; i < n; ++i) {
        auto img = apply_permutation(u, witness[i]);
        if (present.insert(img).second) {
          witness.push_back(std::move(img));
        }
      }
      current = join(current, apply_permutation(u, current));
      nu      = step->result;
    }
    return witness;
  }

  ////////////////////////////////////////////////////////////////////////
  // Posets of partitions
  ////////////////////////////////////////////////////////////////////////

  // Nodes in reverse-lexicographic order (a linear extension of the order,
  // coarsest first) and cover edges (lower, upper) as node indices.
  struct PartitionPoset {
    int                                           k = 0;
    std::vector<IntegerPartition>                 nodes;
    std::vector<std::pair<std::size_t, std::size_t>> edges;

    std::size_t index_of(IntegerPartition const& p) const {
      auto it = std::find(nodes.begin(), nodes.end(), p);
      if (it == nodes.end()) {
        throw Error(error_kind::invalid_argument, "\"" + p.to_string() + "\" is not a node");
      }
      return static_cast<std::size_t>(it - nodes.begin());
    }

    std::vector<std::pair<IntegerPartition, IntegerPartition>> cover_pairs() const {
      std::vector<std::pair<IntegerPartition, IntegerPartition>> out;
      for (auto const& [lo, hi] : edges) {
        out.emplace_back(nodes[lo], nodes[hi]);
      }
      return out;
    }
  };

  // rel[i][j] = preceq(nodes[i], nodes[j]).
  inline std::vector<std::vector<char>> relation_matrix(std::vector<IntegerPartition> const& nodes) {
    std::vector<std::vector<char>> rel(nodes.size(), std::vector<char>(nodes.size(), 0));
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      for (std::size_t j = 0; j < nodes.size(); ++j) {
        rel[i][j] = preceq(nodes[i], nodes[j]) ? 1 : 0;
      }
    }
    return rel;
  }

  // Edges i -> j with i < j strictly and no k strictly between.
  inline std::vector<std::pair<std::size_t, std::size_t>> transitive_reduction(
      std::vector<std::vector<char>> const& rel) {
    std::size_t const                                n = rel.size();
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j || !rel[i][j]) {
          continue;
        }
        bool implied = false;
        for (std::size_t m = 0; m < n && !implied; ++m) {
          implied = m != i && m != j && rel[i][m] && rel[m][j];
        }
        if (!implied) {
          edges.emplace_back(i, j);
        }
      }
    }
    return edges;
  }

  inline std::vector<IntegerPartition> poset_nodes(int k) {
    std::vector<IntegerPartition> nodes;
    if (k < 2) {
      return nodes;
    }
    for (auto& p : partitions_of(k)) {
      if (!p.is_all_ones()) {
        nodes.push_back(std::move(p));
      }
    }
    return nodes;
  }

  // Hasse diagram of the partitions of k other than 1^k, with edges from
  // lower_covers of every node. Nodes are processed in parallel; the edge
  // list is sorted so the result does not depend on the thread count.
  inline PartitionPoset hasse(int k, unsigned threads = 1) {
    PartitionPoset poset;
    poset.k     = k;
    poset.nodes = poset_nodes(k);
    std::map<IntegerPartition, std::size_t> index;
    for (std::size_t i = 0; i < poset.nodes.size(); ++i) {
      index.emplace(poset.nodes[i], i);
    }
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> per_node(poset.nodes.size());
    auto work = [&](std::size_t i) {
      for (auto const& mu : lower_covers(poset.nodes[i])) {
        per_node[i].emplace_back(index.at(mu), i);
      }
    };
    threads = std::max(1u, threads);
    if (threads == 1) {
      for (std::size_t i = 0; i < poset.nodes.size(); ++i) {
        work(i);
      }
    } else {
      std::vector<std::thread> pool;
      for (unsigned w = 0; w < threads; ++w) {
        pool.emplace_back([&, w]() {
          for (std::size_t i = w; i < poset.nodes.size(); i += threads) {
            work(i);
          }
        });
      }
      for (auto& th : pool) {
        th.join();
      }
    }
    for (auto const& e : per_node) {
      poset.edges.insert(poset.edges.end(), e.begin(), e.end());
    }
    std::sort(poset.edges.begin(), poset.edges.end());
    return poset;
  }

  // {nu : bottom <= nu <= top} with its own cover edges.
  inline PartitionPoset interval(IntegerPartition const& bottom, IntegerPartition const& top) {
    if (!preceq(bottom, top)) {
      throw Error(error_kind::not_comparable,
                  "\"" + bottom.to_string() + "\" is not below \"" + top.to_string() + "\"");
    }
    PartitionPoset poset;
    poset.k = bottom.size();
    for (auto& nu : partitions_of(poset.k)) {
      if (preceq(bottom, nu) && preceq(nu, top)) {
        poset.nodes.push_back(std::move(nu));
      }
    }
    poset.edges = transitive_reduction(relation_matrix(poset.nodes));
    std::sort(poset.edges.begin(), poset.edges.end());
    return poset;
  }

  // Moebius function of the order on [bottom, top] by the recursion
  // mu(x, x) = 1, mu(x, y) = -sum_{x <= z < y} mu(x, z).
  inline BigInt mobius(IntegerPartition const& bottom, IntegerPartition const& top) {
    auto const        iv  = interval(bottom, top);
    auto const        rel = relation_matrix(iv.nodes);
    std::size_t const n   = iv.nodes.size();
    // Nodes are a linear extension, so iv.nodes[0] is the bottom.
    std::vector<BigInt> value(n);
    for (std::size_t z = 0; z < n; ++z) {
      if (z == 0) {
        value[z] = 1;
        continue;
      }
      BigInt sum = 0;
      for (std::size_t w = 0; w < z; ++w) {
        if (rel[w][z]) {
          sum += value[w];
        }
      }
      value[z] = -sum;
    }
    return value[iv.index_of(top)];
  }

  ////////////////////////////////////////////////////////////////////////
  // Export
  ////////////////////////////////////////////////////////////////////////

  inline std::string to_dot(PartitionPoset const& poset, std::string const& name = "") {
    std::string out = "digraph \"" + (name.empty() ? "P" + std::to_string(poset.k) : name)
                      + "\" {\n";
    for (auto const& p : poset.nodes) {
      out += "  \"" + p.to_string() + "\";\n";
    }
    for (auto const& [lo, hi] : poset.edges) {
      out += "  \"" + poset.nodes[lo].to_string() + "\" -> \"" + poset.nodes[hi].to_string()
             + "\";\n";
    }
    return out + "}\n";
  }

  inline nlohmann::ordered_json to_json(PartitionPoset const& poset) {
    nlohmann::ordered_json j;
    j["k"]     = poset.k;
    auto nodes = nlohmann::ordered_json::array();
    for (auto const& p : poset.nodes) {
      nodes.push_back(p.to_string());
    }
    auto edges = nlohmann::ordered_json::array();
    for (auto const& [lo, hi] : poset.edges) {
      edges.push_back({poset.nodes[lo].to_string(), poset.nodes[hi].to_string()});
    }
    j["nodes"] = std::move(nodes);
    j["edges"] = std::move(edges);
    return j;
  }

}  // namespace ubp

#endif  // UBP_ORDER_HPP_
