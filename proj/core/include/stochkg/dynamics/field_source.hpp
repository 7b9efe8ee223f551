#pragma once

#include <memory>

#include "stochkg/vacuum/field.hpp"

namespace stochkg::dynamics {

/// External field seen by a test charge.
class FieldSource {
 public:
  virtual ~FieldSource() = default;
  virtual vacuum::FieldTensor at(const FourVector& x) const = 0;
};

/// The random zero-point field of one ModeSet realization.
class VacuumFieldSource final : public FieldSource {
 public:
  explicit VacuumFieldSource(vacuum::ModeSet modes) : modes_(std::move(modes)) {}
  vacuum::FieldTensor at(const FourVector& x) const override {
    return vacuum::field_tensor(modes_, x);
  }
  const vacuum::ModeSet& modes() const { return modes_; }

 private:
  vacuum::ModeSet modes_;
};

/// Constant, homogeneous E and B.
class UniformFieldSource final : public FieldSource {
 public:
  UniformFieldSource(const Vec3& e, const Vec3& b)
      : tensor_(vacuum::FieldTensor::from_fields(e, b)) {}
  vacuum::FieldTensor at(const FourVector&) const override { return tensor_; }

 private:
  vacuum::FieldTensor tensor_;
};

class NullFieldSource final : public FieldSource {
 public:
  vacuum::FieldTensor at(const FourVector&) const override { return {}; }
};

}  // namespace stochkg::dynamics
