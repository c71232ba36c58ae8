#include "optlab/firstorder/trace.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace optlab::firstorder {

std::string trace_csv_string(const std::vector<TraceRecord>& trace, const TraceCsvOptions& opts) {
    std::ostringstream out;
    out.precision(17);
    out << "k,epoch,f,grad_norm,step_size,batch_size,wall_ms";
    if (opts.second_order_columns) out << ",cg_iters,ls_evals";
    if (opts.phase_column) out << ",phase";
    out << "\n";
    for (const auto& r : trace) {
        out << r.k << "," << r.epoch << "," << r.f << "," << r.grad_norm << "," << r.step_size
            << "," << r.batch_size << "," << (opts.deterministic_wall ? 0.0 : r.wall_ms);
        if (opts.second_order_columns) out << "," << r.cg_iters << "," << r.ls_evals;
        if (opts.phase_column) out << "," << r.phase;
        out << "\n";
    }
    return out.str();
}

void save_trace_csv(const std::vector<TraceRecord>& trace, const std::string& path,
                    const TraceCsvOptions& opts) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("save_trace_csv: cannot open " + path);
    out << trace_csv_string(trace, opts);
}

}  // namespace optlab::firstorder
