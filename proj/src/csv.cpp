#include "fledbat/csv.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace fledbat {

std::string format_double(double v) {
    char buf[32];
    const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    (void)ec;
    return std::string(buf, end);
}

namespace {

const char* event_name(FlowEvent e) {
    switch (e) {
    case FlowEvent::Ack: return "ack";
    case FlowEvent::FastRetransmit: return "fast_retx";
    case FlowEvent::Timeout: return "timeout";
    }
    return "?";
}

void header(std::ostream& out, const char* what) {
    out << "# fledbat-sim " << what << " " << kCsvSchemaVersion << "\n";
}

} // namespace

void write_flow_series_csv(std::ostream& out, const SimulationTrace& trace) {
    header(out, "flow-series");
    out << "t,flow,cwnd,delta,dmin,acked,event\n";
    for (const AckSample& a : trace.acks) {
        out << format_double(a.t) << ',' << a.flow << ',' << format_double(a.cwnd) << ','
            << format_double(a.delta) << ',' << format_double(a.dmin) << ',' << a.acked_pkts
            << ',' << event_name(a.event) << '\n';
    }
}

void write_queue_csv(std::ostream& out, const SimulationTrace& trace) {
    header(out, "queue-series");
    out << "t,queue_pkts\n";
    for (const QueueSample& q : trace.queue)
        out << format_double(q.t) << ',' << q.qlen << '\n';
}

void write_rates_csv(std::ostream& out, const SimulationTrace& trace, double window_s) {
    header(out, "rate-series");
    out << "t";
    for (const FlowMeta& f : trace.flows)
        out << ",x" << f.id;
    out << ",queue_pkts\n";

    // Trailing-window packet counts per flow, advanced in lockstep with the
    // queue-sample grid.
    std::map<int, std::size_t> flow_col;
    for (std::size_t i = 0; i < trace.flows.size(); ++i)
        flow_col[trace.flows[i].id] = i;
    std::vector<double> acked_in_window(trace.flows.size(), 0.0);
    std::size_t lo = 0, hi = 0;

    for (const QueueSample& q : trace.queue) {
        while (hi < trace.acks.size() && trace.acks[hi].t <= q.t) {
            const AckSample& a = trace.acks[hi];
            acked_in_window[flow_col.at(a.flow)] += a.acked_pkts;
            ++hi;
        }
        while (lo < hi && trace.acks[lo].t <= q.t - window_s) {
            const AckSample& a = trace.acks[lo];
            acked_in_window[flow_col.at(a.flow)] -= a.acked_pkts;
            ++lo;
        }
        const double window = std::min(window_s, std::max(q.t, 1e-9));
        out << format_double(q.t);
        for (double acked : acked_in_window)
            out << ',' << format_double(acked / window);
        out << ',' << q.qlen << '\n';
    }
}

void write_fluid_csv(std::ostream& out, const std::vector<FluidState>& series) {
    header(out, "fluid-series");
    out << "t";
    for (Eigen::Index i = 0; i < (series.empty() ? 0 : series.front().rates.size()); ++i)
        out << ",x" << i;
    out << ",queue_pkts\n";
    for (const FluidState& s : series) {
        out << format_double(s.time);
        for (Eigen::Index i = 0; i < s.rates.size(); ++i)
            out << ',' << format_double(s.rates[i]);
        out << ',' << format_double(s.queue) << '\n';
    }
}

void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows) {
    header(out, "summary");
    out << "scenario_id,seed,fairness,efficiency,breakdown,mean_queue_pkts\n";
    for (const SummaryRow& r : rows) {
        out << r.scenario_id << ',' << r.seed << ',' << format_double(r.fairness) << ','
            << format_double(r.efficiency) << ','
            << (r.breakdown ? format_double(*r.breakdown) : std::string("na")) << ','
            << format_double(r.mean_queue_pkts) << '\n';
    }
}

std::vector<SummaryRow> read_summary_csv(std::istream& in) {
    std::vector<SummaryRow> rows;
    std::string line;
    bool saw_header = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#')
            continue;
        if (!saw_header) {
            saw_header = true; // column names
            continue;
        }
        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string field;
        while (std::getline(ss, field, ','))
            fields.push_back(field);
        if (fields.size() != 6)
            throw std::runtime_error("summary csv: malformed line '" + line + "'");
        SummaryRow r;
        r.scenario_id = fields[0];
        r.seed = std::stoull(fields[1]);
        r.fairness = std::stod(fields[2]);
        r.efficiency = std::stod(fields[3]);
        if (fields[4] != "na")
            r.breakdown = std::stod(fields[4]);
        r.mean_queue_pkts = std::stod(fields[5]);
        rows.push_back(std::move(r));
    }
    return rows;
}

} // namespace fledbat
