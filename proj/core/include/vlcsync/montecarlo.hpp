#pragma once

// Reproducible Monte-Carlo plumbing: every trial draws from its own generator
// derived from (master seed, trial index), so results do not depend on how
// trials are spread over worker threads.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>

#include "vlcsync/codes.hpp"

namespace vlcsync {

using Rng = std::mt19937_64;

/// Generator for one trial; distinct (seed, index) pairs give independent streams.
Rng trial_rng(std::uint64_t master_seed, std::uint64_t index);

/// i.i.d. symbols drawn from the source.
SymbolSeq sample_symbols(const SourceModel& source, std::size_t count, Rng& rng);

/// Worker count used when a caller passes 0.
unsigned default_thread_count();

/// Runs body(i) for i in [0, count) on `threads` workers (0 = default).
/// Exceptions from the body are rethrown on the calling thread.
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& body);

/// Half-width of a normal-approximation confidence interval for a proportion.
double binomial_half_width(double p, std::size_t trials, double z = 1.96);

}  // namespace vlcsync
