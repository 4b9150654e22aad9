#include "dbsearch/problem.hpp"

#include <cassert>
#include <cstdlib>

namespace dbsearch {

void Problem::add_constraint(std::unique_ptr<Propagator> c) {
    int id = static_cast<int>(constraints_.size());
    for (int v : c->scope()) {
        assert(v >= 0 && v < num_vars());
        watchers_[static_cast<size_t>(v)].push_back(id);
    }
    constraints_.push_back(std::move(c));
    in_queue_.push_back(0);
}

void Problem::restore_state(int level) {
    if (level < 0 || level >= trail_.depth()) abort();
    size_t keep = trail_.marks_[static_cast<size_t>(level)];
    while (trail_.entries_.size() > keep) {
        auto& e = trail_.entries_.back();
        domains_[static_cast<size_t>(e.var)].restore_value(e.value);
        trail_.entries_.pop_back();
    }
    trail_.marks_.resize(static_cast<size_t>(level));
    ++epoch_;
}

bool Problem::remove(int var, int value) {
    Domain& d = domains_[static_cast<size_t>(var)];
    if (!d.remove(value)) return true;
    trail_.record(var, value);
    if (propagating_) wake_watchers(var);
    return !d.empty();
}

PropResult Problem::assign(int var, int value) {
    Domain& d = domains_[static_cast<size_t>(var)];
    if (!d.contains(value)) return PropResult::Failed;
    if (d.is_assigned()) return PropResult::Consistent;
    for (int v : d.values())
        if (v != value) remove(var, v);
    return PropResult::Consistent;
}

void Problem::wake_watchers(int var) {
    for (int c : watchers_[static_cast<size_t>(var)]) {
        if (!in_queue_[static_cast<size_t>(c)]) {
            in_queue_[static_cast<size_t>(c)] = 1;
            queue_.push_back(c);
        }
    }
}

PropResult Problem::propagate(std::span<const int> changed_vars) {
    assert(!propagating_);
    propagating_ = true;
    queue_.clear();
    queue_head_ = 0;
    for (int v : changed_vars) wake_watchers(v);
    PropResult r = run_queue();
    propagating_ = false;
    return r;
}

PropResult Problem::propagate_all() {
    assert(!propagating_);
    propagating_ = true;
    queue_.clear();
    queue_head_ = 0;
    for (size_t c = 0; c < constraints_.size(); ++c) {
        in_queue_[c] = 1;
        queue_.push_back(static_cast<int>(c));
    }
    PropResult r = run_queue();
    propagating_ = false;
    return r;
}

PropResult Problem::run_queue() {
    while (queue_head_ < queue_.size()) {
        if (shuffle_state_) {
            // xorshift pick among pending entries
            shuffle_state_ ^= shuffle_state_ << 13;
            shuffle_state_ ^= shuffle_state_ >> 7;
            shuffle_state_ ^= shuffle_state_ << 17;
            size_t pending = queue_.size() - queue_head_;
            size_t pick = queue_head_ + shuffle_state_ % pending;
            std::swap(queue_[queue_head_], queue_[pick]);
        }
        int c = queue_[queue_head_++];
        in_queue_[static_cast<size_t>(c)] = 0;
        if (constraints_[static_cast<size_t>(c)]->propagate(*this) == PropResult::Failed) {
            queue_.clear();
            queue_head_ = 0;
            for (auto& f : in_queue_) f = 0;
            return PropResult::Failed;
        }
    }
    queue_.clear();
    queue_head_ = 0;
    return PropResult::Consistent;
}

PropResult NotEqual::propagate(Problem& p) {
    int x = scope_[0], y = scope_[1];
    if (p.dom(x).is_assigned() && !p.remove(y, p.dom(x).value())) return PropResult::Failed;
    if (p.dom(y).is_assigned() && !p.remove(x, p.dom(y).value())) return PropResult::Failed;
    return PropResult::Consistent;
}

} // namespace dbsearch
