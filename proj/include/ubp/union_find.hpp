#ifndef UBP_UNION_FIND_HPP_
#define UBP_UNION_FIND_HPP_

#include <cstddef>
#include <numeric>
#include <utility>
#include <vector>

namespace ubp {

  // Disjoint-set forest with path halving and union by size.
  class UnionFind {
   public:
    explicit UnionFind(std::size_t n) : _parent(n), _size(n, 1) {
      std::iota(_parent.begin(), _parent.end(), 0);
    }

    std::size_t find(std::size_t x) noexcept {
      while (_parent[x] != x) {
        _parent[x] = _parent[_parent[x]];
        x          = _parent[x];
      }
      return x;
    }

    void unite(std::size_t x, std::size_t y) noexcept {
      x = find(x);
      y = find(y);
      if (x == y) {
        return;
      }
      if (_size[x] < _size[y]) {
        std::swap(x, y);
      }
      _parent[y] = x;
      _size[x] += _size[y];
    }

    std::size_t size() const noexcept {
      return _parent.size();
    }

   private:
    std::vector<std::size_t> _parent;
    std::vector<std::size_t> _size;
  };

}  // namespace ubp

#endif  // UBP_UNION_FIND_HPP_
