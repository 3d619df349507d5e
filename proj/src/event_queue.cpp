#include "fledbat/event_queue.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace fledbat {

EventHandle EventQueue::schedule(double fire_time, EventKind kind, std::function<void()> action) {
    if (!(fire_time >= now_) || !std::isfinite(fire_time))
        throw std::logic_error("EventQueue::schedule: fire_time " + std::to_string(fire_time) +
                               " precedes clock " + std::to_string(now_));
    EventHandle handle = next_seq_++;
    heap_.push_back(Entry{fire_time, handle, kind, std::move(action)});
    std::push_heap(heap_.begin(), heap_.end());
    return handle;
}

void EventQueue::cancel(EventHandle handle) { cancelled_.insert(handle); }

void EventQueue::run_until(double t_end) {
    if (t_end < now_)
        throw std::logic_error("EventQueue::run_until: t_end precedes clock");
    while (!heap_.empty() && heap_.front().fire_time <= t_end) {
        std::pop_heap(heap_.begin(), heap_.end());
        Entry entry = std::move(heap_.back());
        heap_.pop_back();
        if (!cancelled_.empty() && cancelled_.erase(entry.seq) > 0)
            continue;
        now_ = entry.fire_time;
        entry.action();
    }
    now_ = t_end;
}

} // namespace fledbat
