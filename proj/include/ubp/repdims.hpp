#ifndef UBP_REPDIMS_HPP_
#define UBP_REPDIMS_HPP_

#include <cstddef>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "bigint.hpp"
#include "diagrams.hpp"
#include "exception.hpp"
#include "partitions.hpp"

namespace ubp {

  // f^lambda by the hook-length formula; f of the empty partition is 1.
  inline BigInt standard_tableaux_count(IntegerPartition const& lambda) {
    auto const& rows = lambda.parts();
    BigInt      hooks = 1;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      for (int j = 0; j < rows[i]; ++j) {
        // Cells below (i, j): rows i' > i with rows[i'] > j.
        int below = 0;
        for (std::size_t r = i + 1; r < rows.size() && rows[r] > j; ++r) {
          ++below;
        }
        hooks *= (rows[i] - j - 1) + below + 1;
      }
    }
    return factorial(static_cast<unsigned>(lambda.size())) / hooks;
  }

  // A sequence (lambda^(1), ..., lambda^(k)) with sum_i i |lambda^(i)| = k,
  // indexing the irreducible U_k-modules.
  class PartitionVector {
   public:
    PartitionVector() = default;

    PartitionVector(int k, std::vector<IntegerPartition> components)
        : _k(k), _components(std::move(components)) {
      if (static_cast<int>(_components.size()) > k) {
        throw Error(error_kind::invalid_argument, "more than k components");
      }
      _components.resize(static_cast<std::size_t>(k));
      int weight = 0;
      for (std::size_t i = 0; i < _components.size(); ++i) {
        weight += static_cast<int>(i + 1) * _components[i].size();
      }
      if (weight != k) {
        throw Error(error_kind::invalid_argument,
                    "weighted size " + std::to_string(weight) + " != " + std::to_string(k));
      }
    }

    int k() const noexcept {
      return _k;
    }

    // components()[i] is lambda^(i + 1).
    std::vector<IntegerPartition> const& components() const noexcept {
      return _components;
    }

    // "(2|1||)": components separated by '|', parts by ','.
    std::string to_string() const {
      std::string out = "(";
      for (std::size_t i = 0; i < _components.size(); ++i) {
        out += (i == 0 ? "" : "|") + _components[i].to_string();
      }
      return out + ")";
    }

    friend bool operator==(PartitionVector const&, PartitionVector const&) = default;

   private:
    int                           _k = 0;
    std::vector<IntegerPartition> _components;
  };

  // 1^{|lambda^(1)|} 2^{|lambda^(2)|} ... k^{|lambda^(k)|}.
  inline IntegerPartition typevec(PartitionVector const& v) {
    std::vector<int> parts;
    for (std::size_t i = 0; i < v.components().size(); ++i) {
      parts.insert(parts.end(), v.components()[i].size(), static_cast<int>(i + 1));
    }
    return IntegerPartition(std::move(parts));
  }

  namespace detail {
    // Every vector with |lambda^(i)| = sizes[i]: partitions in
    // reverse-lexicographic order per slot, the first slot varying slowest.
    inline void for_each_vector_with_sizes(int k, std::vector<int> const& sizes,
                                           std::function<void(PartitionVector const&)> const& f) {
      std::vector<std::vector<IntegerPartition>> choices;
      for (int a : sizes) {
        choices.push_back(partitions_of(a));
      }
      std::vector<IntegerPartition>    current(sizes.size());
      std::function<void(std::size_t)> pick = [&](std::size_t i) {
        if (i == sizes.size()) {
          f(PartitionVector(k, current));
          return;
        }
        for (auto const& p : choices[i]) {
          current[i] = p;
          pick(i + 1);
        }
      };
      pick(0);
    }
  }  // namespace detail

  // All of I_k, grouped by (|lambda^(1)|, ..., |lambda^(k)|) in decreasing
  // lexicographic order.
  inline std::vector<PartitionVector> partition_vectors(int k) {
    if (k < 0) {
      throw Error(error_kind::invalid_argument, "k must be nonnegative");
    }
    std::vector<PartitionVector>     out;
    std::vector<int>                 sizes(static_cast<std::size_t>(k), 0);
    std::function<void(int, int)> compose = [&](int i, int remaining) {
      if (i > k) {
        if (remaining == 0) {
          detail::for_each_vector_with_sizes(
              k, sizes, [&out](PartitionVector const& v) { out.push_back(v); });
        }
        return;
      }
      for (int a = remaining / i; a >= 0; --a) {
        sizes[i - 1] = a;
        compose(i + 1, remaining - a * i);
      }
      sizes[i - 1] = 0;
    };
    compose(1, k);
    return out;
  }

  // sp_k(typevec(v)) * f^{lambda^(1)} ... f^{lambda^(k)}.
  inline BigInt dim_irreducible(PartitionVector const& v) {
    BigInt dim = sp_count(v.k(), typevec(v));
    for (auto const& lambda : v.components()) {
      dim *= standard_tableaux_count(lambda);
    }
    return dim;
  }

  struct SumOfSquares {
    IntegerPartition                             mu;
    BigInt                                       lhs;
    BigInt                                       rhs;
    bool                                         equal = false;
    std::vector<std::pair<PartitionVector, BigInt>> terms;
  };

  // |J_mu| against the sum of (dim W)^2 over the vectors whose typevec is mu.
  inline SumOfSquares sum_of_squares_check(int k, IntegerPartition const& mu) {
    if (mu.size() != k) {
      throw Error(error_kind::size_mismatch,
                  "\"" + mu.to_string() + "\" is not a partition of " + std::to_string(k));
    }
    SumOfSquares result;
    result.mu  = mu;
    result.lhs = j_class_size(k, mu);
    auto a     = mu.exponents();
    std::vector<int> sizes(a.begin() + 1, a.end());
    detail::for_each_vector_with_sizes(k, sizes, [&result](PartitionVector const& v) {
      BigInt d = dim_irreducible(v);
      result.rhs += d * d;
      result.terms.emplace_back(v, std::move(d));
    });
    result.equal = result.lhs == result.rhs;
    return result;
  }

  inline std::vector<SumOfSquares> dimension_report(int k) {
    std::vector<SumOfSquares> rows;
    for (auto const& mu : partitions_of(k)) {
      rows.push_back(sum_of_squares_check(k, mu));
    }
    return rows;
  }

  inline nlohmann::ordered_json to_json(std::vector<SumOfSquares> const& rows, int k) {
    nlohmann::ordered_json j;
    j["k"]   = k;
    auto out = nlohmann::ordered_json::array();
    for (auto const& r : rows) {
      nlohmann::ordered_json row;
      row["mu"]           = r.mu.to_string();
      row["j_class_size"] = r.lhs.str();
      auto terms          = nlohmann::ordered_json::array();
      for (auto const& [v, d] : r.terms) {
        terms.push_back({{"vector", v.to_string()}, {"dim", d.str()}});
      }
      row["irreducibles"]    = std::move(terms);
      row["sum_of_squares"]  = r.rhs.str();
      row["equal"]           = r.equal;
      out.push_back(std::move(row));
    }
    j["rows"] = std::move(out);
    return j;
  }

  inline std::string to_csv(std::vector<SumOfSquares> const& rows) {
    std::string out = "mu,j_class_size,irreducibles,sum_of_squares,equal\n";
    for (auto const& r : rows) {
      std::string terms;
      for (std::size_t i = 0; i < r.terms.size(); ++i) {
        terms += (i == 0 ? "" : ";") + r.terms[i].first.to_string() + ":"
                 + r.terms[i].second.str();
      }
      out += "\"" + r.mu.to_string() + "\"," + r.lhs.str() + ",\"" + terms + "\","
             + r.rhs.str() + "," + (r.equal ? "true" : "false") + "\n";
    }
    return out;
  }

}  // namespace ubp

#endif  // UBP_REPDIMS_HPP_
