#ifndef UBP_PARTITIONS_HPP_
#define UBP_PARTITIONS_HPP_

#include <algorithm>
#include <charconv>
#include <compare>
#include <cstddef>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bigint.hpp"
#include "exception.hpp"
#include "permutation.hpp"
#include "union_find.hpp"

namespace ubp {

  ////////////////////////////////////////////////////////////////////////
  // IntegerPartition
  ////////////////////////////////////////////////////////////////////////

  // Weakly decreasing sequence of positive parts. The constructor accepts
  // the parts in any order and normalizes them.
  class IntegerPartition {
   public:
    IntegerPartition() = default;

    explicit IntegerPartition(std::vector<int> parts) : _parts(std::move(parts)) {
      for (int p : _parts) {
        if (p <= 0) {
          throw Error(error_kind::invalid_argument,
                      "parts must be positive, found " + std::to_string(p));
        }
        _size += p;
      }
      std::sort(_parts.begin(), _parts.end(), std::greater<>());
    }

    IntegerPartition(std::initializer_list<int> parts)
        : IntegerPartition(std::vector<int>(parts)) {}

    // 1^k.
    static IntegerPartition ones(int k) {
      return IntegerPartition(std::vector<int>(k, 1));
    }

    // Parses "3,2,2,1,1"; the empty string is the empty partition.
    static IntegerPartition parse(std::string_view text) {
      std::vector<int> parts;
      if (text.empty()) {
        return IntegerPartition();
      }
      std::size_t pos = 0;
      while (true) {
        auto const  comma = text.find(',', pos);
        auto const  token = text.substr(pos, comma == std::string_view::npos
                                                  ? std::string_view::npos
                                                  : comma - pos);
        int         value = 0;
        auto const  res = std::from_chars(token.data(), token.data() + token.size(), value);
        if (token.empty() || res.ec != std::errc() || res.ptr != token.data() + token.size()
            || value <= 0) {
          throw Error(error_kind::parse_error,
                      "expected comma-separated positive integers, got \""
                          + std::string(text) + "\"");
        }
        parts.push_back(value);
        if (comma == std::string_view::npos) {
          break;
        }
        pos = comma + 1;
      }
      return IntegerPartition(std::move(parts));
    }

    std::vector<int> const& parts() const noexcept {
      return _parts;
    }

    int size() const noexcept {
      return _size;
    }

    std::size_t length() const noexcept {
      return _parts.size();
    }

    bool empty() const noexcept {
      return _parts.empty();
    }

    int operator[](std::size_t i) const {
      return _parts[i];
    }

    // Exponents a_1, ..., a_k of 1^{a_1} 2^{a_2} ... k^{a_k}; entry 0 unused.
    std::vector<int> exponents() const {
      std::vector<int> a(static_cast<std::size_t>(_size) + 1, 0);
      for (int p : _parts) {
        ++a[p];
      }
      return a;
    }

    std::map<int, int> multiplicities() const {
      std::map<int, int> m;
      for (int p : _parts) {
        ++m[p];
      }
      return m;
    }

    int multiplicity(int part) const {
      return static_cast<int>(std::count(_parts.begin(), _parts.end(), part));
    }

    // True for 1^k, including the empty partition 1^0.
    bool is_all_ones() const noexcept {
      return _parts.empty() || _parts.front() == 1;
    }

    std::string to_string() const {
      std::string out;
      for (std::size_t i = 0; i < _parts.size(); ++i) {
        if (i != 0) {
          out += ',';
        }
        out += std::to_string(_parts[i]);
      }
      return out;
    }

    // Digit-string form ("3111") when every part is a single digit,
    // comma-separated otherwise.
    std::string label() const {
      if (!_parts.empty() && _parts.front() > 9) {
        return to_string();
      }
      std::string out;
      for (int p : _parts) {
        out += static_cast<char>('0' + p);
      }
      return out;
    }

    friend bool operator==(IntegerPartition const& x, IntegerPartition const& y) {
      return x._parts == y._parts;
    }

    friend auto operator<=>(IntegerPartition const& x, IntegerPartition const& y) {
      return x._parts <=> y._parts;
    }

   private:
    std::vector<int> _parts;
    int              _size = 0;
  };

  // Reverse-lexicographic comparison: (4) before (3,1) before (2,2).
  struct reverse_lex_less {
    bool operator()(IntegerPartition const& x, IntegerPartition const& y) const {
      return y < x;
    }
  };

  // All partitions of k in reverse-lexicographic order.
  inline std::vector<IntegerPartition> partitions_of(int k) {
    if (k < 0) {
      throw Error(error_kind::invalid_argument, "k must be nonnegative");
    }
    std::vector<IntegerPartition> out;
    if (k == 0) {
      out.emplace_back();
      return out;
    }
    std::vector<int> a{k};
    while (true) {
      out.emplace_back(a);
      // Rightmost part > 1.
      int ones = 0;
      while (!a.empty() && a.back() == 1) {
        a.pop_back();
        ++ones;
      }
      if (a.empty()) {
        break;
      }
      int const part = --a.back();
      int       rem  = ones + 1;
      while (rem > part) {
        a.push_back(part);
        rem -= part;
      }
      if (rem > 0) {
        a.push_back(rem);
      }
    }
    return out;
  }

  inline int smallest_nontrivial_part(IntegerPartition const& nu) {
    auto const& p = nu.parts();
    for (auto it = p.rbegin(); it != p.rend(); ++it) {
      if (*it > 1) {
        return *it;
      }
    }
    throw Error(error_kind::undefined_smallest_part,
                "partition \"" + nu.to_string() + "\" has no part > 1");
  }

  namespace detail {
    // Decides whether the parts of lambda can be grouped so that the group
    // sums are the parts of mu. Memoizes failed states keyed on the
    // remaining multiplicities of lambda and the index of the next mu part.
    class CoarseningSearch {
     public:
      CoarseningSearch(IntegerPartition const& mu, IntegerPartition const& lambda)
          : _mu(mu.parts()) {
        for (auto const& [value, count] : lambda.multiplicities()) {
          _values.push_back(value);
          _counts.push_back(count);
        }
        std::reverse(_values.begin(), _values.end());
        std::reverse(_counts.begin(), _counts.end());
      }

      bool run() {
        return solve(0);
      }

     private:
      bool solve(std::size_t idx) {
        if (idx == _mu.size()) {
          return std::all_of(_counts.begin(), _counts.end(), [](int c) { return c == 0; });
        }
        auto key = std::make_pair(_counts, idx);
        if (_failed.count(key) != 0) {
          return false;
        }
        if (fill(idx, 0, _mu[idx], false)) {
          return true;
        }
        _failed.insert(std::move(key));
        return false;
      }

      // Chooses how many parts of each distinct value go into the group for
      // mu[idx], largest values first.
      bool fill(std::size_t idx, std::size_t j, int remaining, bool used) {
        if (remaining == 0) {
          return used && solve(idx + 1);
        }
        if (j == _values.size()) {
          return false;
        }
        int const v   = _values[j];
        int const max = std::min(_counts[j], remaining / v);
        for (int c = max; c >= 0; --c) {
          _counts[j] -= c;
          bool const ok = fill(idx, j + 1, remaining - c * v, used || c > 0);
          _counts[j] += c;
          if (ok) {
            return true;
          }
        }
        return false;
      }

      std::vector<int>                                 _mu;
      std::vector<int>                                 _values;
      std::vector<int>                                 _counts;
      std::set<std::pair<std::vector<int>, std::size_t>> _failed;
    };
  }  // namespace detail

  // True iff lambda's parts can be grouped into length(mu) groups whose sums
  // are the parts of mu.
  inline bool is_coarser(IntegerPartition const& mu, IntegerPartition const& lambda) {
    if (mu.size() != lambda.size()) {
      throw Error(error_kind::size_mismatch,
                  "is_coarser: |mu| = " + std::to_string(mu.size())
                      + ", |lambda| = " + std::to_string(lambda.size()));
    }
    if (mu == lambda) {
      return true;
    }
    if (mu.length() > lambda.length()
        || (!lambda.empty() && mu[0] < lambda[0])) {
      return false;
    }
    return detail::CoarseningSearch(mu, lambda).run();
  }

  // Number of set partitions of [k] of type lambda:
  // k! / (a_1! ... a_k! (1!)^{a_1} ... (k!)^{a_k}).
  inline BigInt sp_count(int k, IntegerPartition const& lambda) {
    if (lambda.size() != k) {
      throw Error(error_kind::size_mismatch,
                  "\"" + lambda.to_string() + "\" is not a partition of "
                      + std::to_string(k));
    }
    BigInt denom = 1;
    auto   a     = lambda.exponents();
    for (int i = 1; i <= k; ++i) {
      if (a[i] == 0) {
        continue;
      }
      denom *= factorial(a[i]);
      BigInt fi = factorial(i);
      for (int j = 0; j < a[i]; ++j) {
        denom *= fi;
      }
    }
    return factorial(k) / denom;
  }

  ////////////////////////////////////////////////////////////////////////
  // SetPartition
  ////////////////////////////////////////////////////////////////////////

  // A set partition of [k]. Blocks are sorted internally and ordered by
  // their minimum; labels()[i] is the index of the block containing i + 1,
  // which makes labels() a restricted growth string.
  class SetPartition {
   public:
    using Block = std::vector<int>;

    SetPartition() = default;

    SetPartition(int k, std::vector<Block> blocks) {
      if (k < 0) {
        throw Error(error_kind::invalid_argument, "negative ground size");
      }
      std::vector<int> labels(k, -1);
      for (std::size_t b = 0; b < blocks.size(); ++b) {
        if (blocks[b].empty()) {
          throw Error(error_kind::invalid_argument, "empty block");
        }
        for (int x : blocks[b]) {
          if (x < 1 || x > k) {
            throw Error(error_kind::invalid_argument,
                        std::to_string(x) + " is outside [" + std::to_string(k) + "]");
          }
          if (labels[x - 1] != -1) {
            throw Error(error_kind::invalid_argument,
                        std::to_string(x) + " occurs in two blocks");
          }
          labels[x - 1] = static_cast<int>(b);
        }
      }
      for (int i = 0; i < k; ++i) {
        if (labels[i] == -1) {
          throw Error(error_kind::invalid_argument,
                      std::to_string(i + 1) + " is not covered by any block");
        }
      }
      *this = from_labels(labels);
    }

    // Any labelling of [k] by block identifiers; identifiers need not be
    // contiguous or ordered.
    static SetPartition from_labels(std::vector<int> const& labels) {
      SetPartition     out;
      int const        k = static_cast<int>(labels.size());
      std::map<int, int> relabel;
      out._labels.resize(k);
      for (int i = 0; i < k; ++i) {
        auto [it, inserted] = relabel.emplace(labels[i], static_cast<int>(relabel.size()));
        if (inserted) {
          out._blocks.emplace_back();
        }
        out._labels[i] = it->second;
        out._blocks[it->second].push_back(i + 1);
      }
      return out;
    }

    static SetPartition singletons(int k) {
      std::vector<int> labels(k);
      std::iota(labels.begin(), labels.end(), 0);
      return from_labels(labels);
    }

    static SetPartition single_block(int k) {
      return from_labels(std::vector<int>(k, 0));
    }

    // {1..l_1}, {l_1+1..l_1+l_2}, ... for the parts l_i of lambda.
    static SetPartition consecutive(IntegerPartition const& lambda) {
      std::vector<int> labels;
      for (std::size_t b = 0; b < lambda.length(); ++b) {
        labels.insert(labels.end(), lambda[b], static_cast<int>(b));
      }
      return from_labels(labels);
    }

    // Parses "{{1,3},{2}}" with the ground size taken from the largest point.
    static SetPartition parse(std::string_view text, std::optional<int> k = std::nullopt) {
      auto fail = [&text]() {
        return Error(error_kind::parse_error,
                     "expected {{a,b,...},{...}}, got \"" + std::string(text) + "\"");
      };
      std::vector<Block> blocks;
      std::size_t        i = 0;
      auto skip            = [&]() {
        while (i < text.size() && text[i] == ' ') {
          ++i;
        }
      };
      skip();
      if (i >= text.size() || text[i] != '{') {
        throw fail();
      }
      ++i;
      skip();
      int largest = 0;
      while (i < text.size() && text[i] == '{') {
        ++i;
        Block block;
        while (true) {
          skip();
          int  value = 0;
          auto res   = std::from_chars(text.data() + i, text.data() + text.size(), value);
          if (res.ec != std::errc()) {
            throw fail();
          }
          i = static_cast<std::size_t>(res.ptr - text.data());
          block.push_back(value);
          largest = std::max(largest, value);
          skip();
          if (i < text.size() && text[i] == ',') {
            ++i;
            continue;
          }
          if (i < text.size() && text[i] == '}') {
            ++i;
            break;
          }
          throw fail();
        }
        blocks.push_back(std::move(block));
        skip();
        if (i < text.size() && text[i] == ',') {
          ++i;
          skip();
        }
      }
      if (i >= text.size() || text[i] != '}') {
        throw fail();
      }
      ++i;
      skip();
      if (i != text.size()) {
        throw fail();
      }
      return SetPartition(k.value_or(largest), std::move(blocks));
    }

    int ground_size() const noexcept {
      return static_cast<int>(_labels.size());
    }

    std::vector<Block> const& blocks() const noexcept {
      return _blocks;
    }

    std::vector<int> const& labels() const noexcept {
      return _labels;
    }

    std::size_t length() const noexcept {
      return _blocks.size();
    }

    // Index of the block containing point x (1-based).
    int block_of(int x) const {
      return _labels[x - 1];
    }

    std::string to_string() const {
      std::string out = "{";
      for (std::size_t b = 0; b < _blocks.size(); ++b) {
        out += b == 0 ? "{" : ",{";
        for (std::size_t j = 0; j < _blocks[b].size(); ++j) {
          if (j != 0) {
            out += ',';
          }
          out += std::to_string(_blocks[b][j]);
        }
        out += '}';
      }
      return out + "}";
    }

    friend bool operator==(SetPartition const& x, SetPartition const& y) {
      return x._labels == y._labels;
    }

    friend auto operator<=>(SetPartition const& x, SetPartition const& y) {
      return x._blocks <=> y._blocks;
    }

   private:
    std::vector<Block> _blocks;
    std::vector<int>   _labels;
  };

  inline IntegerPartition type_of(SetPartition const& pi) {
    std::vector<int> sizes;
    sizes.reserve(pi.length());
    for (auto const& b : pi.blocks()) {
      sizes.push_back(static_cast<int>(b.size()));
    }
    return IntegerPartition(std::move(sizes));
  }

  inline SetPartition join(SetPartition const& pi, SetPartition const& gamma) {
    if (pi.ground_size() != gamma.ground_size()) {
      throw Error(error_kind::size_mismatch, "join: ground sizes differ");
    }
    int const k = pi.ground_size();
    UnionFind uf(static_cast<std::size_t>(k));
    for (auto const* part : {&pi, &gamma}) {
      for (auto const& b : part->blocks()) {
        for (std::size_t j = 1; j < b.size(); ++j) {
          uf.unite(b[0] - 1, b[j] - 1);
        }
      }
    }
    std::vector<int> labels(k);
    for (int i = 0; i < k; ++i) {
      labels[i] = static_cast<int>(uf.find(i));
    }
    return SetPartition::from_labels(labels);
  }

  // Image of pi under u: every block B becomes u(B).
  inline SetPartition apply_permutation(Permutation const& u, SetPartition const& pi) {
    if (u.degree() != pi.ground_size()) {
      throw Error(error_kind::size_mismatch, "apply_permutation: degree differs from ground size");
    }
    std::vector<int> labels(pi.ground_size());
    for (int x = 1; x <= pi.ground_size(); ++x) {
      labels[u(x) - 1] = pi.block_of(x);
    }
    return SetPartition::from_labels(labels);
  }

  namespace detail {
    inline void restricted_growth(int                                     k,
                                  std::vector<int>&                       labels,
                                  int                                     max_label,
                                  std::function<void(SetPartition const&)> const& f) {
      int const i = static_cast<int>(labels.size());
      if (i == k) {
        f(SetPartition::from_labels(labels));
        return;
      }
      for (int b = 0; b <= max_label + 1; ++b) {
        labels.push_back(b);
        restricted_growth(k, labels, std::max(max_label, b), f);
        labels.pop_back();
      }
    }

    // Fills blocks in order of their minimum element; sizes are drawn from
    // the remaining multiset, largest first.
    class TypedSetPartitions {
     public:
      TypedSetPartitions(int k, IntegerPartition const& lambda,
                         std::function<void(SetPartition const&)> const& f)
          : _k(k), _labels(k, -1), _f(f) {
        for (auto const& [value, count] : lambda.multiplicities()) {
          _sizes.emplace_back(value, count);
        }
        std::reverse(_sizes.begin(), _sizes.end());
      }

      void run() {
        next_block(0, 0);
      }

     private:
      void next_block(int start, int block) {
        while (start < _k && _labels[start] != -1) {
          ++start;
        }
        if (start == _k) {
          _f(SetPartition::from_labels(_labels));
          return;
        }
        _labels[start] = block;
        for (auto& [size, count] : _sizes) {
          if (count == 0) {
            continue;
          }
          --count;
          choose(start + 1, size - 1, block);
          ++count;
        }
        _labels[start] = -1;
      }

      void choose(int from, int needed, int block) {
        if (needed == 0) {
          next_block(0, block + 1);
          return;
        }
        for (int x = from; x < _k; ++x) {
          if (_labels[x] != -1) {
            continue;
          }
          _labels[x] = block;
          choose(x + 1, needed - 1, block);
          _labels[x] = -1;
        }
      }

      int                                      _k;
      std::vector<int>                         _labels;
      std::vector<std::pair<int, int>>         _sizes;
      std::function<void(SetPartition const&)> _f;
    };
  }  // namespace detail

  // Calls f on every set partition of [k], or on those of the given type.
  inline void for_each_set_partition(int                                      k,
                                     std::optional<IntegerPartition> const&   type_filter,
                                     std::function<void(SetPartition const&)> const& f) {
    if (k < 0) {
      throw Error(error_kind::invalid_argument, "k must be nonnegative");
    }
    if (type_filter) {
      if (type_filter->size() != k) {
        throw Error(error_kind::size_mismatch,
                    "\"" + type_filter->to_string() + "\" is not a partition of "
                        + std::to_string(k));
      }
      detail::TypedSetPartitions(k, *type_filter, f).run();
      return;
    }
    std::vector<int> labels;
    detail::restricted_growth(k, labels, -1, f);
  }

  inline std::vector<SetPartition> set_partitions_of(
      int k, std::optional<IntegerPartition> const& type_filter = std::nullopt) {
    std::vector<SetPartition> out;
    for_each_set_partition(k, type_filter, [&out](SetPartition const& p) { out.push_back(p); });
    return out;
  }

}  // namespace ubp

template <>
struct std::hash<ubp::IntegerPartition> {
  std::size_t operator()(ubp::IntegerPartition const& p) const noexcept {
    std::size_t h = 0xcbf29ce484222325ULL;
    for (int x : p.parts()) {
      h = (h ^ static_cast<std::size_t>(x)) * 0x100000001b3ULL;
    }
    return h;
  }
};

template <>
struct std::hash<ubp::SetPartition> {
  std::size_t operator()(ubp::SetPartition const& p) const noexcept {
    std::size_t h = 0xcbf29ce484222325ULL;
    for (int x : p.labels()) {
      h = (h ^ static_cast<std::size_t>(x)) * 0x100000001b3ULL;
    }
    return h;
  }
};

#endif  // UBP_PARTITIONS_HPP_
