#pragma once

#include <Eigen/Core>

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace ngnep {

using Index = Eigen::Index;

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

/// Partition of a joint strategy vector into per-player blocks.
///
/// Stores N+1 strictly increasing offsets with offsets[0] = 0 and
/// offsets[N] = n, so that player ν owns the half-open range
/// [offsets[ν], offsets[ν+1]).
class BlockLayout {
 public:
  BlockLayout() : offsets_{0} {}

  static BlockLayout from_widths(std::span<const Index> widths) {
    BlockLayout layout;
    layout.offsets_.reserve(widths.size() + 1);
    for (Index w : widths) {
      if (w < 1) throw std::invalid_argument("BlockLayout: block width must be >= 1");
      layout.offsets_.push_back(layout.offsets_.back() + w);
    }
    return layout;
  }

  static BlockLayout from_widths(std::initializer_list<Index> widths) {
    return from_widths(std::span<const Index>(widths.begin(), widths.size()));
  }

  std::size_t num_blocks() const { return offsets_.size() - 1; }
  Index size() const { return offsets_.back(); }
  Index start(std::size_t block) const { return offsets_.at(block); }
  Index width(std::size_t block) const { return offsets_.at(block + 1) - offsets_.at(block); }
  const std::vector<Index>& offsets() const { return offsets_; }

  bool operator==(const BlockLayout&) const = default;

 private:
  std::vector<Index> offsets_;
};

/// Joint strategy profile x = (x¹, …, x^N) with its block boundaries.
template <typename Scalar>
class BlockVector {
 public:
  BlockVector() = default;
  BlockVector(BlockLayout layout, Vector<Scalar> data) : layout_(std::move(layout)), data_(std::move(data)) {
    if (data_.size() != layout_.size())
      throw std::invalid_argument("BlockVector: data length " + std::to_string(data_.size()) +
                                  " does not match layout size " + std::to_string(layout_.size()));
  }

  static BlockVector zeros(BlockLayout layout) {
    Vector<Scalar> data = Vector<Scalar>::Zero(layout.size());
    return BlockVector(std::move(layout), std::move(data));
  }

  static BlockVector constant(BlockLayout layout, Scalar value) {
    Vector<Scalar> data = Vector<Scalar>::Constant(layout.size(), value);
    return BlockVector(std::move(layout), std::move(data));
  }

  /// Reassembles a profile from per-player blocks.
  static BlockVector assemble(std::span<const Vector<Scalar>> blocks) {
    std::vector<Index> widths;
    widths.reserve(blocks.size());
    for (const auto& b : blocks) widths.push_back(b.size());
    BlockLayout layout = BlockLayout::from_widths(widths);
    Vector<Scalar> data(layout.size());
    for (std::size_t i = 0; i < blocks.size(); ++i) data.segment(layout.start(i), layout.width(i)) = blocks[i];
    return BlockVector(std::move(layout), std::move(data));
  }

  const BlockLayout& layout() const { return layout_; }
  const Vector<Scalar>& data() const { return data_; }
  Vector<Scalar>& data() { return data_; }
  std::size_t num_blocks() const { return layout_.num_blocks(); }
  Index size() const { return data_.size(); }

  auto block(std::size_t nu) const { return data_.segment(layout_.start(nu), layout_.width(nu)); }
  auto block(std::size_t nu) { return data_.segment(layout_.start(nu), layout_.width(nu)); }

  std::vector<Vector<Scalar>> blocks() const {
    std::vector<Vector<Scalar>> out;
    out.reserve(num_blocks());
    for (std::size_t i = 0; i < num_blocks(); ++i) out.emplace_back(block(i));
    return out;
  }

 private:
  BlockLayout layout_;
  Vector<Scalar> data_;
};

}  // namespace ngnep
