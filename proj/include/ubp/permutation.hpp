#ifndef UBP_PERMUTATION_HPP_
#define UBP_PERMUTATION_HPP_

#include <algorithm>
#include <compare>
#include <numeric>
#include <string>
#include <vector>

#include "exception.hpp"

namespace ubp {

  // A bijection of [k] = {1, ..., k}; images()[i - 1] is the image of i.
  class Permutation {
   public:
    Permutation() = default;

    explicit Permutation(std::vector<int> images) : _images(std::move(images)) {
      std::vector<bool> seen(_images.size(), false);
      int const         k = degree();
      for (int x : _images) {
        if (x < 1 || x > k || seen[x - 1]) {
          throw Error(error_kind::invalid_argument,
                      "images do not form a permutation of 1.." + std::to_string(k));
        }
        seen[x - 1] = true;
      }
    }

    static Permutation identity(int k) {
      std::vector<int> im(k);
      std::iota(im.begin(), im.end(), 1);
      return Permutation(std::move(im));
    }

    static Permutation transposition(int k, int a, int b) {
      if (a < 1 || b < 1 || a > k || b > k) {
        throw Error(error_kind::invalid_argument, "transposition outside [k]");
      }
      auto im = identity(k)._images;
      std::swap(im[a - 1], im[b - 1]);
      return Permutation(std::move(im));
    }

    // All of S_k in lexicographic order of image sequences.
    static std::vector<Permutation> all(int k) {
      std::vector<Permutation> out;
      auto                     im = identity(k)._images;
      do {
        out.push_back(Permutation(im));
      } while (std::next_permutation(im.begin(), im.end()));
      return out;
    }

    int degree() const noexcept {
      return static_cast<int>(_images.size());
    }

    int operator()(int i) const {
      return _images[i - 1];
    }

    std::vector<int> const& images() const noexcept {
      return _images;
    }

    Permutation inverse() const {
      std::vector<int> inv(_images.size());
      for (std::size_t i = 0; i < _images.size(); ++i) {
        inv[_images[i] - 1] = static_cast<int>(i) + 1;
      }
      return Permutation(std::move(inv));
    }

    bool is_identity() const noexcept {
      for (std::size_t i = 0; i < _images.size(); ++i) {
        if (_images[i] != static_cast<int>(i) + 1) {
          return false;
        }
      }
      return true;
    }

    friend bool operator==(Permutation const&, Permutation const&) = default;
    friend auto operator<=>(Permutation const&, Permutation const&) = default;

   private:
    std::vector<int> _images;
  };

  // (s o r)(i) = s(r(i)).
  inline Permutation compose(Permutation const& s, Permutation const& r) {
    if (s.degree() != r.degree()) {
      throw Error(error_kind::size_mismatch, "compose: degrees differ");
    }
    std::vector<int> im(r.degree());
    for (int i = 1; i <= r.degree(); ++i) {
      im[i - 1] = s(r(i));
    }
    return Permutation(std::move(im));
  }

}  // namespace ubp

#endif  // UBP_PERMUTATION_HPP_
