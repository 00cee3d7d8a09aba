// Independent reference computations used only by the tests. Nothing here
// calls into the routine it is used to check.
#ifndef UBP_TESTS_ORACLES_HPP_
#define UBP_TESTS_ORACLES_HPP_

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <vector>

namespace oracle {

  // p(k) by Euler's pentagonal number recurrence.
  inline std::uint64_t partition_count(int k) {
    std::vector<std::int64_t> p(static_cast<std::size_t>(k) + 1, 0);
    p[0] = 1;
    for (int n = 1; n <= k; ++n) {
      std::int64_t s = 0;
      for (int j = 1;; ++j) {
        int const g1 = j * (3 * j - 1) / 2;
        int const g2 = j * (3 * j + 1) / 2;
        if (g1 > n) {
          break;
        }
        int const sign = (j % 2 == 1) ? 1 : -1;
        s += sign * p[n - g1];
        if (g2 <= n) {
          s += sign * p[n - g2];
        }
      }
      p[n] = s;
    }
    return static_cast<std::uint64_t>(p[k]);
  }

  // Bell numbers by the Bell triangle.
  inline std::uint64_t bell(int k) {
    std::vector<std::uint64_t> row{1};
    for (int n = 0; n < k; ++n) {
      std::vector<std::uint64_t> next{row.back()};
      for (auto x : row) {
        next.push_back(next.back() + x);
      }
      row = std::move(next);
    }
    return row.front();
  }

  // All set partitions of {0..n-1} as block-label vectors: point i joins
  // one of the blocks opened so far or opens a new one.
  inline std::vector<std::vector<int>> set_partition_labels(int n) {
    std::vector<std::vector<int>>  out;
    std::vector<int>               a(static_cast<std::size_t>(n), 0);
    std::function<void(int, int)>  rec = [&](int i, int opened) {
      if (i == n) {
        out.push_back(a);
        return;
      }
      for (int v = 0; v <= opened; ++v) {
        a[i] = v;
        rec(i + 1, std::max(opened, v + 1));
      }
    };
    rec(0, 0);
    return out;
  }

  // Group sums of the parts of lambda under some set partition of its
  // positions equal mu (as multisets).
  inline bool coarser(std::vector<int> const& mu, std::vector<int> const& lambda) {
    std::multiset<int> target(mu.begin(), mu.end());
    for (auto const& labels : set_partition_labels(static_cast<int>(lambda.size()))) {
      std::map<int, int> sums;
      for (std::size_t i = 0; i < lambda.size(); ++i) {
        sums[labels[i]] += lambda[i];
      }
      std::multiset<int> got;
      for (auto const& [b, s] : sums) {
        got.insert(s);
      }
      if (got == target) {
        return true;
      }
    }
    return false;
  }

  // Join of two set partitions given as label vectors: connected components
  // of the union of the two equivalence relations, by Floyd-Warshall style
  // transitive closure on a boolean matrix.
  inline std::vector<std::vector<int>> join_blocks(std::vector<int> const& a,
                                                   std::vector<int> const& b) {
    std::size_t const              n = a.size();
    std::vector<std::vector<char>> r(n, std::vector<char>(n, 0));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        r[i][j] = (a[i] == a[j] || b[i] == b[j]) ? 1 : 0;
      }
    }
    for (std::size_t m = 0; m < n; ++m) {
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          if (r[i][m] && r[m][j]) {
            r[i][j] = 1;
          }
        }
      }
    }
    std::vector<std::vector<int>> blocks;
    std::vector<char>             done(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      if (done[i]) {
        continue;
      }
      std::vector<int> block;
      for (std::size_t j = 0; j < n; ++j) {
        if (r[i][j]) {
          block.push_back(static_cast<int>(j) + 1);
          done[j] = 1;
        }
      }
      blocks.push_back(block);
    }
    return blocks;
  }

  // Product of two diagrams given as 2k labels (top then bottom) by
  // depth-first search on the explicit three-row graph.
  inline std::vector<std::vector<int>> diagram_product_blocks(int k, std::vector<int> const& x,
                                                              std::vector<int> const& y) {
    // Vertices: top 0..k-1, middle k..2k-1, bottom 2k..3k-1.
    std::size_t const             n = 3 * static_cast<std::size_t>(k);
    std::vector<std::vector<int>> adj(n);
    auto connect_same_label = [&](std::vector<int> const& labels, int offset) {
      for (int i = 0; i < 2 * k; ++i) {
        for (int j = 0; j < 2 * k; ++j) {
          if (i != j && labels[i] == labels[j]) {
            adj[offset + i].push_back(offset + j);
          }
        }
      }
    };
    connect_same_label(x, 0);
    connect_same_label(y, k);
    std::vector<int> comp(n, -1);
    int              c = 0;
    for (std::size_t s = 0; s < n; ++s) {
      if (comp[s] != -1) {
        continue;
      }
      std::vector<int> stack{static_cast<int>(s)};
      comp[s] = c;
      while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int w : adj[v]) {
          if (comp[w] == -1) {
            comp[w] = c;
            stack.push_back(w);
          }
        }
      }
      ++c;
    }
    // Blocks as sorted lists of signed points: i for top, -i for bottom.
    std::map<int, std::vector<int>> by_comp;
    for (int i = 0; i < k; ++i) {
      by_comp[comp[i]].push_back(i + 1);
    }
    for (int i = 0; i < k; ++i) {
      by_comp[comp[2 * k + i]].push_back(-(i + 1));
    }
    std::vector<std::vector<int>> blocks;
    for (auto& [id, b] : by_comp) {
      std::sort(b.begin(), b.end());
      blocks.push_back(b);
    }
    std::sort(blocks.begin(), blocks.end());
    return blocks;
  }

  // |U_k| by filtering all set partitions of a 2k-point set for uniformity.
  inline std::uint64_t uniform_count(int k) {
    std::uint64_t n = 0;
    for (auto const& labels : set_partition_labels(2 * k)) {
      std::map<int, int> balance;
      for (int i = 0; i < 2 * k; ++i) {
        balance[labels[i]] += i < k ? 1 : -1;
      }
      if (std::all_of(balance.begin(), balance.end(), [](auto const& kv) { return kv.second == 0; })) {
        ++n;
      }
    }
    return n;
  }

  // Standard fillings of the shape rows, enumerated by placing 1, 2, ...
  // one cell at a time so that the filled cells always form a partition.
  inline std::uint64_t standard_fillings(std::vector<int> const& rows) {
    int total = 0;
    for (int r : rows) {
      total += r;
    }
    std::vector<int>            filled(rows.size(), 0);
    std::function<std::uint64_t(int)> place = [&](int placed) -> std::uint64_t {
      if (placed == total) {
        return 1;
      }
      std::uint64_t n = 0;
      for (std::size_t i = 0; i < rows.size(); ++i) {
        bool const room  = filled[i] < rows[i];
        bool const above = i == 0 || filled[i - 1] > filled[i];
        if (room && above) {
          ++filled[i];
          n += place(placed + 1);
          --filled[i];
        }
      }
      return n;
    };
    return place(0);
  }

  inline std::uint64_t factorial(int n) {
    std::uint64_t r = 1;
    for (int i = 2; i <= n; ++i) {
      r *= static_cast<std::uint64_t>(i);
    }
    return r;
  }

}  // namespace oracle

#endif  // UBP_TESTS_ORACLES_HPP_
