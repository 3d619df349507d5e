#pragma once

#include <cstdint>
#include <functional>
#include <unordered_set>
#include <vector>

namespace fledbat {

enum class EventKind {
    PacketArrivesAtQueue,
    PacketDeparts,
    AckDelivered,
    ChunkDone,
    Sample,
    Timer, // housekeeping: flow start/stop, retransmission timeouts
};

using EventHandle = std::uint64_t;

/// Single-threaded discrete-event engine with a monotone virtual clock.
///
/// Ordering contract: events fire in (fire_time, insertion order). The
/// insertion-order tie-break makes the schedule a total order, so a run is a
/// pure function of the scheduled work -- the basis of the simulator's
/// determinism guarantee. Cancellation tombstones the handle; the entry is
/// skipped when popped.
class EventQueue {
  public:
    double now() const { return now_; }

    /// Schedules an action. Throws std::logic_error if fire_time precedes the
    /// clock: scheduling into the past is a bug in the caller, not a
    /// recoverable condition.
    EventHandle schedule(double fire_time, EventKind kind, std::function<void()> action);

    void cancel(EventHandle handle);

    /// Fires every non-cancelled event with fire_time <= t_end in order, then
    /// leaves the clock exactly at t_end.
    void run_until(double t_end);

    std::size_t pending() const { return heap_.size() - cancelled_.size(); }

  private:
    struct Entry {
        double fire_time;
        EventHandle seq;
        EventKind kind;
        std::function<void()> action;

        // std::push_heap builds a max-heap; invert so the earliest
        // (fire_time, seq) sits at the front.
        friend bool operator<(const Entry& a, const Entry& b) {
            if (a.fire_time != b.fire_time)
                return a.fire_time > b.fire_time;
            return a.seq > b.seq;
        }
    };

    std::vector<Entry> heap_;
    std::unordered_set<EventHandle> cancelled_;
    double now_ = 0.0;
    EventHandle next_seq_ = 0;
};

} // namespace fledbat
