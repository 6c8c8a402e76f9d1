// space.hpp — tensor-product space layout and factor partitions

#pragma once

#include <cstddef>
#include <vector>

#include "entprod/common.hpp"

namespace entprod {

// Ordered list of tensor-factor dimensions d_1,...,d_N. Basis states carry
// mixed-radix multi-indices, row-major with the LAST factor varying fastest:
//   index(n_1,...,n_N) = ((n_1*d_2 + n_2)*d_3 + n_3)*...
class SpaceLayout {
public:
    explicit SpaceLayout(std::vector<std::size_t> dims);

    std::size_t factor_count() const { return dims_.size(); }
    std::size_t dim(std::size_t factor) const { return dims_.at(factor); }
    const std::vector<std::size_t>& dims() const { return dims_; }
    std::size_t total_dim() const { return total_; }

    // Stride of each factor in the flat index (last factor has stride 1).
    std::vector<std::size_t> strides() const;

    // Layout made of the given factors, in the given order.
    SpaceLayout sublayout(const std::vector<std::size_t>& factors) const;

    friend bool operator==(const SpaceLayout&, const SpaceLayout&) = default;

private:
    std::vector<std::size_t> dims_;
    std::size_t total_ = 1;
};

// Disjoint, non-empty blocks of factor indices whose union covers the whole
// layout. A single-block partition is legal (and forces epsilon = 0).
// Indices inside a block are normalized to ascending order; block order is
// preserved as given.
class Partition {
public:
    Partition(std::vector<std::vector<std::size_t>> blocks,
              std::size_t factor_count);

    // One block per factor.
    static Partition singletons(std::size_t factor_count);

    std::size_t block_count() const { return blocks_.size(); }
    const std::vector<std::size_t>& block(std::size_t b) const {
        return blocks_.at(b);
    }
    const std::vector<std::vector<std::size_t>>& blocks() const {
        return blocks_;
    }
    std::size_t factor_count() const { return factor_count_; }

private:
    std::vector<std::vector<std::size_t>> blocks_;
    std::size_t factor_count_;
};

}  // namespace entprod
