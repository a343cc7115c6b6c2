#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace coenroll {

/// Worker threads used by all-source passes. 0 selects hardware concurrency.
void set_thread_count(unsigned count);
unsigned thread_count();

/// Runs body(i) for i in [0, count) on the configured worker pool.
/// Each index must write only to state it owns.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

/// Deterministic map-reduce over items [0, count).
///
/// Items are grouped into fixed-size chunks. Each chunk folds its items in
/// ascending order into a fresh accumulator, and chunk accumulators are merged
/// into the total in ascending chunk order. Neither grouping depends on the
/// thread count, so floating-point results are bit-identical for any number
/// of workers. At most `chunks_in_flight` accumulators are alive at once.
template <typename Acc, typename MakeAcc, typename Fold, typename Merge>
void ordered_reduce(std::size_t count, std::size_t chunk_size, Acc& total, MakeAcc make_acc,
                    Fold fold, Merge merge, std::size_t chunks_in_flight = 16) {
    if (count == 0) return;
    chunk_size = std::max<std::size_t>(chunk_size, 1);
    const std::size_t chunks = (count + chunk_size - 1) / chunk_size;
    for (std::size_t wave = 0; wave < chunks; wave += chunks_in_flight) {
        const std::size_t wave_end = std::min(chunks, wave + chunks_in_flight);
        std::vector<Acc> partial;
        partial.reserve(wave_end - wave);
        for (std::size_t c = wave; c < wave_end; ++c) partial.push_back(make_acc());
        parallel_for(wave_end - wave, [&](std::size_t local) {
            const std::size_t chunk = wave + local;
            const std::size_t begin = chunk * chunk_size;
            const std::size_t end = std::min(count, begin + chunk_size);
            for (std::size_t item = begin; item < end; ++item) fold(partial[local], item);
        });
        for (auto& acc : partial) merge(total, acc);
    }
}

}  // namespace coenroll
