#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "corners/families.hpp"

namespace corners {

// Anything that can apply a real symmetric matrix to a vector.
class SymmetricOperator {
 public:
  virtual ~SymmetricOperator() = default;
  virtual std::int64_t dim() const = 0;
  virtual void apply(std::span<const double> x, std::span<double> y) const = 0;

  std::vector<double> apply(std::span<const double> x) const {
    std::vector<double> y(static_cast<std::size_t>(dim()), 0.0);
    apply(x, y);
    return y;
  }
};

class DenseOperator final : public SymmetricOperator {
 public:
  explicit DenseOperator(const DenseSymMatrix& m) : m_(m) {}
  std::int64_t dim() const override { return m_.n; }
  void apply(std::span<const double> x, std::span<double> y) const override;
  using SymmetricOperator::apply;

 private:
  const DenseSymMatrix& m_;
};

}  // namespace corners
