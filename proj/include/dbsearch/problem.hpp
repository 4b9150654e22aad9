#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "dbsearch/domain.hpp"

namespace dbsearch {

class Problem;

enum class PropResult { Consistent, Failed };

// Shared best-solution value for branch-and-bound runs; the search engine
// updates it on improving solutions, bound propagators read it.
struct Incumbent {
    std::optional<long long> best;
};

class Propagator {
public:
    virtual ~Propagator() = default;
    virtual const std::vector<int>& scope() const = 0;
    virtual PropResult propagate(Problem& p) = 0;
};

// Backtrack trail: every value removal is recorded; restore(level) re-adds
// removals in reverse order, reproducing the exact previous domain states.
class Trail {
public:
    int save() {
        marks_.push_back(entries_.size());
        return static_cast<int>(marks_.size()) - 1;
    }
    void record(int var, int value) { entries_.push_back({var, value}); }
    int depth() const { return static_cast<int>(marks_.size()); }

private:
    friend class Problem;
    struct Entry {
        int var;
        int value;
    };
    std::vector<Entry> entries_;
    std::vector<size_t> marks_;
};

class Problem {
public:
    int add_variable(int lo, int hi) {
        domains_.emplace_back(lo, hi);
        watchers_.emplace_back();
        return static_cast<int>(domains_.size()) - 1;
    }

    // Takes ownership; scope indices must already be valid.
    void add_constraint(std::unique_ptr<Propagator> c);

    int num_vars() const { return static_cast<int>(domains_.size()); }
    const Domain& dom(int var) const { return domains_[static_cast<size_t>(var)]; }

    int save_state() { return trail_.save(); }
    void restore_state(int level);
    // Incremented on every restore; propagators use it to detect backtracking.
    uint64_t restore_epoch() const { return epoch_; }

    // Trailed removal. Absent value: silent no-op. Returns false iff the
    // domain became empty (caller must treat as failure).
    bool remove(int var, int value);
    // Reduces the domain to {value}; Failed when value is not present.
    PropResult assign(int var, int value);

    // Runs all propagators watching the given variables to fixpoint.
    PropResult propagate(std::span<const int> changed_vars);
    PropResult propagate_all();

    // Test knob: when set, the pending-propagator queue is drained in
    // pseudo-random order instead of FIFO (confluence check).
    void set_queue_shuffle_seed(uint64_t seed) { shuffle_state_ = seed | 1; }
    void clear_queue_shuffle() { shuffle_state_ = 0; }

private:
    PropResult run_queue();
    void wake_watchers(int var);

    std::vector<Domain> domains_;
    std::vector<std::unique_ptr<Propagator>> constraints_;
    std::vector<std::vector<int>> watchers_;
    Trail trail_;
    uint64_t epoch_ = 0;

    std::vector<int> queue_;
    std::vector<char> in_queue_;
    size_t queue_head_ = 0;
    bool propagating_ = false;
    uint64_t shuffle_state_ = 0;
};

// x != y on two variables.
class NotEqual final : public Propagator {
public:
    NotEqual(int x, int y) : scope_{x, y} {}
    const std::vector<int>& scope() const override { return scope_; }
    PropResult propagate(Problem& p) override;

private:
    std::vector<int> scope_;
};

} // namespace dbsearch
