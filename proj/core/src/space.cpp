#include "entprod/space.hpp"

#include <algorithm>
#include <string>

namespace entprod {

SpaceLayout::SpaceLayout(std::vector<std::size_t> dims)
    : dims_(std::move(dims)) {
    if (dims_.empty())
        throw ValidationError("SpaceLayout: at least one factor required");
    for (std::size_t d : dims_) {
        if (d < 1) throw ValidationError("SpaceLayout: factor dimension must be >= 1");
        total_ *= d;
    }
}

std::vector<std::size_t> SpaceLayout::strides() const {
    std::vector<std::size_t> s(dims_.size(), 1);
    for (std::size_t i = dims_.size(); i-- > 1;)
        s[i - 1] = s[i] * dims_[i];
    return s;
}

SpaceLayout SpaceLayout::sublayout(const std::vector<std::size_t>& factors) const {
    std::vector<std::size_t> d;
    d.reserve(factors.size());
    for (std::size_t f : factors) d.push_back(dim(f));
    return SpaceLayout(std::move(d));
}

Partition::Partition(std::vector<std::vector<std::size_t>> blocks,
                     std::size_t factor_count)
    : blocks_(std::move(blocks)), factor_count_(factor_count) {
    if (blocks_.empty())
        throw ValidationError("Partition: at least one block required");
    std::vector<bool> seen(factor_count_, false);
    std::size_t covered = 0;
    for (auto& blk : blocks_) {
        if (blk.empty())
            throw ValidationError("Partition: empty block");
        std::sort(blk.begin(), blk.end());
        for (std::size_t f : blk) {
            if (f >= factor_count_)
                throw ValidationError("Partition: factor index " +
                                      std::to_string(f) + " out of range");
            if (seen[f])
                throw ValidationError("Partition: factor index " +
                                      std::to_string(f) + " appears twice");
            seen[f] = true;
            ++covered;
        }
    }
    if (covered != factor_count_)
        throw ValidationError("Partition: blocks do not cover every factor");
}

Partition Partition::singletons(std::size_t factor_count) {
    std::vector<std::vector<std::size_t>> blocks;
    blocks.reserve(factor_count);
    for (std::size_t i = 0; i < factor_count; ++i) blocks.push_back({i});
    return Partition(std::move(blocks), factor_count);
}

}  // namespace entprod
