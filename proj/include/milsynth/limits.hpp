#pragma once

#include <chrono>
#include <cstdint>

namespace mil {

/// Resource accounting shared by the proof engines: a resolution-step
/// budget, an optional wall-clock deadline, and a proof-depth cap that
/// backstops runaway recursive candidates.
class Budget {
public:
    using Clock = std::chrono::steady_clock;

    explicit Budget(long long steps = 1'000'000)
        : steps_remaining_(steps), initial_steps_(steps) {}

    void set_deadline(Clock::time_point t) {
        deadline_ = t;
        has_deadline_ = true;
    }

    /// Charge one resolution step. Returns false once any limit is hit.
    bool tick() {
        if (!ok()) return false;
        if (--steps_remaining_ < 0) {
            steps_exhausted_ = true;
            return false;
        }
        if (has_deadline_ && (++tick_count_ & 0x3ff) == 0 && Clock::now() > deadline_) {
            deadline_exceeded_ = true;
            return false;
        }
        return true;
    }

    bool ok() const { return !steps_exhausted_ && !deadline_exceeded_; }
    bool steps_exhausted() const { return steps_exhausted_; }
    bool deadline_exceeded() const { return deadline_exceeded_; }
    long long steps_used() const { return initial_steps_ - steps_remaining_; }

    // Proof depth guard.
    static constexpr int kMaxProofDepth = 4096;
    bool enter() {
        if (depth_ >= kMaxProofDepth) {
            depth_pruned_ = true;
            return false;
        }
        ++depth_;
        return true;
    }
    void leave() { --depth_; }
    bool depth_pruned() const { return depth_pruned_; }
    void clear_depth_pruned() { depth_pruned_ = false; }

    /// True when some limit may have cut the search short.
    bool incomplete() const { return steps_exhausted_ || deadline_exceeded_ || depth_pruned_; }

private:
    long long steps_remaining_;
    long long initial_steps_ = 0;
    std::uint64_t tick_count_ = 0;
    Clock::time_point deadline_{};
    bool has_deadline_ = false;
    bool steps_exhausted_ = false;
    bool deadline_exceeded_ = false;
    int depth_ = 0;
    bool depth_pruned_ = false;
};

/// RAII wrapper for Budget::enter/leave.
class DepthGuard {
public:
    explicit DepthGuard(Budget& b) : budget_(b), entered_(b.enter()) {}
    ~DepthGuard() {
        if (entered_) budget_.leave();
    }
    DepthGuard(const DepthGuard&) = delete;
    DepthGuard& operator=(const DepthGuard&) = delete;
    bool ok() const { return entered_; }

private:
    Budget& budget_;
    bool entered_;
};

}  // namespace mil
