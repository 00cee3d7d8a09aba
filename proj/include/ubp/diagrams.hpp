#ifndef UBP_DIAGRAMS_HPP_
#define UBP_DIAGRAMS_HPP_

#include <algorithm>
#include <cstddef>
#include <functional>
#include <numeric>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "json.hpp"

#include "bigint.hpp"
#include "exception.hpp"
#include "partitions.hpp"
#include "permutation.hpp"
#include "union_find.hpp"

namespace ubp {

  // An element of the uniform block permutation monoid U_k: a set partition
  // of [k] u [k-bar] in which every block has as many top points as bottom
  // points.
  //
  // Stored as 2k block labels: entries [0, k) label the top points and form
  // a restricted growth string, entries [k, 2k) label the bottom points.
  // Because every block contains a top point, this is exactly the canonical
  // block order (blocks sorted by their minimum top point).
  class UniformBlockPermutation {
   public:
    // (top points, bottom points), both as indices in [k].
    using Block = std::pair<std::vector<int>, std::vector<int>>;

    UniformBlockPermutation() = default;

    static UniformBlockPermutation from_blocks(int k, std::vector<Block> const& blocks) {
      if (k < 0) {
        throw Error(error_kind::invalid_argument, "negative degree");
      }
      std::vector<int> labels(2 * static_cast<std::size_t>(k), -1);
      auto place = [&](int x, std::size_t offset, int b, char const* row) {
        if (x < 1 || x > k) {
          throw Error(error_kind::not_a_partition,
                      std::string(row) + " point " + std::to_string(x) + " outside [1, "
                          + std::to_string(k) + "]");
        }
        int& slot = labels[offset + x - 1];
        if (slot != -1) {
          throw Error(error_kind::not_a_partition,
                      std::string(row) + " point " + std::to_string(x) + " occurs twice");
        }
        slot = b;
      };
      for (std::size_t b = 0; b < blocks.size(); ++b) {
        auto const& [top, bot] = blocks[b];
        if (top.empty() && bot.empty()) {
          throw Error(error_kind::not_a_partition, "empty block");
        }
        for (int x : top) {
          place(x, 0, static_cast<int>(b), "top");
        }
        for (int x : bot) {
          place(x, static_cast<std::size_t>(k), static_cast<int>(b), "bottom");
        }
      }
      for (auto const& [top, bot] : blocks) {
        if (top.size() != bot.size()) {
          throw Error(error_kind::non_uniform_block,
                      "block has " + std::to_string(top.size()) + " top and "
                          + std::to_string(bot.size()) + " bottom points");
        }
      }
      for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i] == -1) {
          int const x = static_cast<int>(i % static_cast<std::size_t>(k)) + 1;
          throw Error(error_kind::not_a_partition,
                      std::string(i < static_cast<std::size_t>(k) ? "top" : "bottom")
                          + " point " + std::to_string(x) + " is not covered");
        }
      }
      return UniformBlockPermutation(k, canonical(k, labels));
    }

    static UniformBlockPermutation identity(int k) {
      std::vector<int> labels(2 * static_cast<std::size_t>(k));
      for (int i = 0; i < k; ++i) {
        labels[i] = labels[k + i] = i;
      }
      return UniformBlockPermutation(k, std::move(labels));
    }

    // Trusted constructor for labels already in canonical form.
    static UniformBlockPermutation from_canonical_labels(int k, std::vector<int> labels) {
      return UniformBlockPermutation(k, std::move(labels));
    }

    int degree() const noexcept {
      return _degree;
    }

    std::vector<int> const& labels() const noexcept {
      return _labels;
    }

    std::size_t number_of_blocks() const noexcept {
      return _degree == 0 ? 0
                          : static_cast<std::size_t>(
                                *std::max_element(_labels.begin(), _labels.begin() + _degree))
                                + 1;
    }

    std::vector<Block> blocks() const {
      std::vector<Block> out(number_of_blocks());
      for (int i = 0; i < _degree; ++i) {
        out[_labels[i]].first.push_back(i + 1);
        out[_labels[_degree + i]].second.push_back(i + 1);
      }
      return out;
    }

    SetPartition top() const {
      return SetPartition::from_labels(
          std::vector<int>(_labels.begin(), _labels.begin() + _degree));
    }

    SetPartition bot() const {
      return SetPartition::from_labels(
          std::vector<int>(_labels.begin() + _degree, _labels.end()));
    }

    IntegerPartition type() const {
      return type_of(top());
    }

    bool is_idempotent() const {
      return std::equal(_labels.begin(), _labels.begin() + _degree, _labels.begin() + _degree);
    }

    bool is_unit() const noexcept {
      return number_of_blocks() == static_cast<std::size_t>(_degree);
    }

    // Blocks flattened as t_1 < ... 0 b_1 < ... 0 per block; lexicographic
    // comparison of these keys is lexicographic order on the block list.
    std::vector<int> block_key() const {
      std::vector<int> key;
      key.reserve(4 * static_cast<std::size_t>(_degree));
      for (auto const& [top, bot] : blocks()) {
        key.insert(key.end(), top.begin(), top.end());
        key.push_back(0);
        key.insert(key.end(), bot.begin(), bot.end());
        key.push_back(0);
      }
      return key;
    }

    friend bool operator==(UniformBlockPermutation const& x, UniformBlockPermutation const& y) {
      return x._degree == y._degree && x._labels == y._labels;
    }

    friend bool operator<(UniformBlockPermutation const& x, UniformBlockPermutation const& y) {
      if (x._degree != y._degree) {
        return x._degree < y._degree;
      }
      return x.block_key() < y.block_key();
    }

   private:
    UniformBlockPermutation(int k, std::vector<int> labels)
        : _degree(k), _labels(std::move(labels)) {}

    // Relabels so the top row is a restricted growth string.
    static std::vector<int> canonical(int k, std::vector<int> const& labels) {
      std::vector<int> relabel(labels.size(), -1);
      std::vector<int> out(labels.size());
      int              next = 0;
      for (int i = 0; i < k; ++i) {
        int& r = relabel[labels[i]];
        if (r == -1) {
          r = next++;
        }
        out[i] = r;
      }
      for (int i = 0; i < k; ++i) {
        out[k + i] = relabel[labels[k + i]];
      }
      return out;
    }

    int              _degree = 0;
    std::vector<int> _labels;
  };

  // Stacks x on top of y, identifies the bottom row of x with the top row
  // of y, and keeps the connected components restricted to the outer rows.
  inline UniformBlockPermutation multiply(UniformBlockPermutation const& x,
                                          UniformBlockPermutation const& y) {
    if (x.degree() != y.degree()) {
      throw Error(error_kind::size_mismatch,
                  "multiply: degrees " + std::to_string(x.degree()) + " and "
                      + std::to_string(y.degree()));
    }
    std::size_t const k = static_cast<std::size_t>(x.degree());
    // Nodes: top [0, k), middle [k, 2k), bottom [2k, 3k).
    UnionFind         uf(3 * k);
    std::vector<long> first(2 * k, -1);
    auto              link = [&](std::vector<int> const& labels, std::size_t offset) {
      std::fill(first.begin(), first.end(), -1);
      for (std::size_t i = 0; i < 2 * k; ++i) {
        long& f = first[labels[i]];
        if (f == -1) {
          f = static_cast<long>(offset + i);
        } else {
          uf.unite(static_cast<std::size_t>(f), offset + i);
        }
      }
    };
    link(x.labels(), 0);
    link(y.labels(), k);

    std::vector<int> root_label(3 * k, -1);
    std::vector<int> out(2 * k);
    int              next = 0;
    for (std::size_t i = 0; i < k; ++i) {
      int& r = root_label[uf.find(i)];
      if (r == -1) {
        r = next++;
      }
      out[i] = r;
    }
    for (std::size_t i = 0; i < k; ++i) {
      out[k + i] = root_label[uf.find(2 * k + i)];
    }
    return UniformBlockPermutation::from_canonical_labels(static_cast<int>(k), std::move(out));
  }

  // Blocks {sigma(i), i-bar}.
  inline UniformBlockPermutation from_permutation(Permutation const& sigma) {
    int const        k = sigma.degree();
    std::vector<int> labels(2 * static_cast<std::size_t>(k));
    for (int i = 1; i <= k; ++i) {
      labels[sigma(i) - 1] = sigma(i) - 1;
      labels[k + i - 1]    = sigma(i) - 1;
    }
    return UniformBlockPermutation::from_canonical_labels(k, std::move(labels));
  }

  // e_pi: every block of pi on the top row joined to its copy on the bottom.
  inline UniformBlockPermutation idempotent_of(SetPartition const& pi) {
    int const        k = pi.ground_size();
    std::vector<int> labels(pi.labels());
    labels.insert(labels.end(), pi.labels().begin(), pi.labels().end());
    return UniformBlockPermutation::from_canonical_labels(k, std::move(labels));
  }

  inline SetPartition top(UniformBlockPermutation const& x) {
    return x.top();
  }

  inline SetPartition bot(UniformBlockPermutation const& x) {
    return x.bot();
  }

  // x = from_permutation(tau) * idempotent_of(gamma) with gamma = bot(x);
  // tau sends the i-th smallest bottom point of each block to the i-th
  // smallest top point of the same block.
  inline std::pair<Permutation, SetPartition> factorize(UniformBlockPermutation const& x) {
    std::vector<int> tau(static_cast<std::size_t>(x.degree()));
    for (auto const& [top, bot] : x.blocks()) {
      for (std::size_t i = 0; i < top.size(); ++i) {
        tau[bot[i] - 1] = top[i];
      }
    }
    return {Permutation(std::move(tau)), x.bot()};
  }

  inline BigInt j_class_size(int k, IntegerPartition const& mu) {
    BigInt     sp = sp_count(k, mu);
    BigInt     result = sp * sp;
    auto const a      = mu.exponents();
    for (int i = 1; i <= k; ++i) {
      result *= factorial(a[i]);
    }
    return result;
  }

  namespace detail {
    // Every element of J_mu: a top partition and a bottom partition of type
    // mu, and a size-preserving matching between their blocks.
    inline void for_each_in_j_class(int k, IntegerPartition const& mu,
                                    std::function<void(UniformBlockPermutation const&)> const& f) {
      auto const      parts = set_partitions_of(k, mu);
      std::vector<int> labels(2 * static_cast<std::size_t>(k));
      for (auto const& top : parts) {
        std::copy(top.labels().begin(), top.labels().end(), labels.begin());
        for (auto const& bot : parts) {
          // Bottom blocks grouped by size; matched to top blocks of that size.
          std::vector<std::vector<int>> top_by_size(static_cast<std::size_t>(k) + 1);
          std::vector<std::vector<int>> bot_by_size(static_cast<std::size_t>(k) + 1);
          for (std::size_t b = 0; b < top.length(); ++b) {
            top_by_size[top.blocks()[b].size()].push_back(static_cast<int>(b));
          }
          for (std::size_t b = 0; b < bot.length(); ++b) {
            bot_by_size[bot.blocks()[b].size()].push_back(static_cast<int>(b));
          }
          std::vector<int> match(bot.length());
          std::function<void(std::size_t)> assign = [&](std::size_t size) {
            while (size <= static_cast<std::size_t>(k) && bot_by_size[size].empty()) {
              ++size;
            }
            if (size > static_cast<std::size_t>(k)) {
              for (int i = 0; i < k; ++i) {
                labels[k + i] = match[bot.labels()[i]];
              }
              f(UniformBlockPermutation::from_canonical_labels(k, labels));
              return;
            }
            auto& perm = bot_by_size[size];
            std::sort(perm.begin(), perm.end());
            do {
              for (std::size_t j = 0; j < perm.size(); ++j) {
                match[perm[j]] = top_by_size[size][j];
              }
              assign(size + 1);
            } while (std::next_permutation(perm.begin(), perm.end()));
          };
          assign(1);
        }
      }
    }
  }  // namespace detail

  // Elements of U_k (or of J_mu when a type is given) in a fixed order:
  // by type in reverse-lexicographic order, then lexicographically on the
  // canonical block list. J-classes may be generated on separate threads.
  inline std::vector<UniformBlockPermutation> enumerate_U(
      int k, std::optional<IntegerPartition> const& type_filter = std::nullopt,
      unsigned threads = 1) {
    if (k < 0) {
      throw Error(error_kind::invalid_argument, "k must be nonnegative");
    }
    std::vector<IntegerPartition> types;
    if (type_filter) {
      if (type_filter->size() != k) {
        throw Error(error_kind::size_mismatch,
                    "\"" + type_filter->to_string() + "\" is not a partition of "
                        + std::to_string(k));
      }
      types.push_back(*type_filter);
    } else {
      types = partitions_of(k);
    }
    std::vector<std::vector<UniformBlockPermutation>> shards(types.size());
    auto work = [&](std::size_t t) {
      auto& shard = shards[t];
      detail::for_each_in_j_class(
          k, types[t], [&shard](UniformBlockPermutation const& x) { shard.push_back(x); });
      std::vector<std::pair<std::vector<int>, std::size_t>> keys(shard.size());
      for (std::size_t i = 0; i < shard.size(); ++i) {
        keys[i] = {shard[i].block_key(), i};
      }
      std::sort(keys.begin(), keys.end());
      std::vector<UniformBlockPermutation> sorted;
      sorted.reserve(shard.size());
      for (auto const& key : keys) {
        sorted.push_back(std::move(shard[key.second]));
      }
      shard = std::move(sorted);
    };
    threads = std::max(1u, threads);
    if (threads == 1 || types.size() == 1) {
      for (std::size_t t = 0; t < types.size(); ++t) {
        work(t);
      }
    } else {
      std::vector<std::thread> pool;
      for (unsigned w = 0; w < threads; ++w) {
        pool.emplace_back([&, w]() {
          for (std::size_t t = w; t < types.size(); t += threads) {
            work(t);
          }
        });
      }
      for (auto& th : pool) {
        th.join();
      }
    }
    std::vector<UniformBlockPermutation> out;
    for (auto& shard : shards) {
      out.insert(out.end(), std::make_move_iterator(shard.begin()),
                 std::make_move_iterator(shard.end()));
    }
    return out;
  }

  // Counts by generating every element without materializing the list.
  inline std::uint64_t count_U(int k, std::optional<IntegerPartition> const& type_filter
                                      = std::nullopt) {
    std::vector<IntegerPartition> types
        = type_filter ? std::vector<IntegerPartition>{*type_filter} : partitions_of(k);
    std::uint64_t n = 0;
    for (auto const& mu : types) {
      if (mu.size() != k) {
        throw Error(error_kind::size_mismatch,
                    "\"" + mu.to_string() + "\" is not a partition of " + std::to_string(k));
      }
      detail::for_each_in_j_class(k, mu, [&n](UniformBlockPermutation const&) { ++n; });
    }
    return n;
  }

  ////////////////////////////////////////////////////////////////////////
  // JSON element format: {"k": 9, "blocks": [[1,3,-1,-2],[2,-4],...]}
  ////////////////////////////////////////////////////////////////////////

  inline nlohmann::ordered_json to_json(UniformBlockPermutation const& x) {
    nlohmann::ordered_json j;
    j["k"]      = x.degree();
    auto blocks = nlohmann::ordered_json::array();
    for (auto const& [top, bot] : x.blocks()) {
      auto b = nlohmann::ordered_json::array();
      for (int t : top) {
        b.push_back(t);
      }
      for (int s : bot) {
        b.push_back(-s);
      }
      blocks.push_back(std::move(b));
    }
    j["blocks"] = std::move(blocks);
    return j;
  }

  inline UniformBlockPermutation element_from_json(nlohmann::json const& j) {
    if (!j.is_object() || !j.contains("k") || !j.contains("blocks")
        || !j["k"].is_number_integer() || !j["blocks"].is_array()) {
      throw Error(error_kind::parse_error, "expected {\"k\": int, \"blocks\": [[...], ...]}");
    }
    int const                                   k = j["k"].get<int>();
    std::vector<UniformBlockPermutation::Block> blocks;
    for (auto const& b : j["blocks"]) {
      if (!b.is_array()) {
        throw Error(error_kind::parse_error, "each block must be an array of integers");
      }
      UniformBlockPermutation::Block block;
      for (auto const& v : b) {
        if (!v.is_number_integer() || v.get<int>() == 0) {
          throw Error(error_kind::parse_error, "block entries must be nonzero integers");
        }
        int const x = v.get<int>();
        (x > 0 ? block.first : block.second).push_back(x > 0 ? x : -x);
      }
      blocks.push_back(std::move(block));
    }
    return UniformBlockPermutation::from_blocks(k, blocks);
  }

  inline UniformBlockPermutation element_from_json(std::string const& text) {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (nlohmann::json::parse_error const& e) {
      throw Error(error_kind::parse_error, e.what());
    }
    return element_from_json(j);
  }

}  // namespace ubp

template <>
struct std::hash<ubp::UniformBlockPermutation> {
  std::size_t operator()(ubp::UniformBlockPermutation const& x) const noexcept {
    std::size_t h = 0xcbf29ce484222325ULL;
    for (int v : x.labels()) {
      h = (h ^ static_cast<std::size_t>(v)) * 0x100000001b3ULL;
    }
    return h;
  }
};

#endif  // UBP_DIAGRAMS_HPP_
