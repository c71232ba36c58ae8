#pragma once

#include <string>
#include <vector>

namespace optlab::firstorder {

/// One optimization step's observables.
struct TraceRecord {
    std::size_t k = 0;
    double epoch = 0.0;
    double f = 0.0;
    double grad_norm = 0.0;
    double step_size = 0.0;
    std::size_t batch_size = 0;
    double wall_ms = 0.0;
    // second-order extras; zero where not applicable
    int cg_iters = 0;
    int ls_evals = 0;
    // hybrid phase label; empty when not applicable
    std::string phase;
};

struct TraceCsvOptions {
    bool second_order_columns = false;  // adds cg_iters,ls_evals
    bool phase_column = false;          // adds phase
    /// Write wall_ms as 0 so reruns with the same seed are byte-identical;
    /// measured timings then belong in the run manifest.
    bool deterministic_wall = false;
};

/// Header `k,epoch,f,grad_norm,step_size,batch_size,wall_ms[,...]`,
/// 17-significant-digit decimals.
void save_trace_csv(const std::vector<TraceRecord>& trace, const std::string& path,
                    const TraceCsvOptions& opts = {});

std::string trace_csv_string(const std::vector<TraceRecord>& trace,
                             const TraceCsvOptions& opts = {});

}  // namespace optlab::firstorder
