// writers.hpp — text and CSV encodings of trajectories, states, grids and sweep tables

#pragma once

#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "dicke/core/sparse_operator.hpp"
#include "dicke/core/state.hpp"
#include "dicke/io/format.hpp"
#include "dicke/propagation/trajectory.hpp"
#include "dicke/quasiprob/agarwal.hpp"
#include "dicke/quasiprob/field_wigner.hpp"
#include "dicke/sweep/gap_scaling.hpp"
#include "dicke/sweep/sweep.hpp"

namespace dicke::io {

// --- trajectories ---

inline std::string trajectory_header() {
    std::string h;
    for (auto c : ObservableRecord::kColumns) {
        if (!h.empty()) h += ',';
        h += c;
    }
    return h;
}

inline void write_trajectory_csv(std::ostream& os, const Trajectory& traj) {
    os << trajectory_header() << '\n';
    for (const auto& s : traj.samples) os << join_doubles(s.record.values()) << '\n';
}

inline std::vector<ObservableRecord> read_trajectory_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || line != trajectory_header())
        throw std::runtime_error("read_trajectory_csv: unexpected header");
    std::vector<ObservableRecord> out;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        const auto f = split(line, ',');
        if (f.size() != ObservableRecord::kColumns.size())
            throw std::runtime_error("read_trajectory_csv: wrong column count");
        ObservableRecord r;
        double* dst[] = {&r.t,      &r.lambda, &r.qubit_op, &r.field_op,      &r.spin_sq,
                         &r.concurrence, &r.field_sq, &r.parity, &r.purity_qubits, &r.purity_field};
        for (std::size_t k = 0; k < f.size(); ++k) *dst[k] = parse_double(f[k]);
        out.push_back(r);
    }
    return out;
}

// --- state snapshots ---
// header "kind dims time lambda" with dims = spin_dim x fock_dim, then one "re,im" per line
// (vector entries in basis order, matrix entries row by row). Snapshots are always in the full space.

inline void write_state_snapshot(std::ostream& os, const QuantumState& state) {
    const QuantumState st = state.embedded();
    const auto& sp = st.space();
    os << to_string(st.kind()) << ' ' << sp.spin_dim() << 'x' << sp.fock_dim() << ' ' << format_double(st.time())
       << ' ' << format_double(st.lambda()) << '\n';
    auto put = [&](cplx z) { os << format_double(z.real()) << ',' << format_double(z.imag()) << '\n'; };
    if (st.is_pure()) {
        for (Index i = 0; i < st.vector().size(); ++i) put(st.vector()[i]);
    } else {
        const auto& r = st.matrix();
        for (Index i = 0; i < r.rows(); ++i)
            for (Index j = 0; j < r.cols(); ++j) put(r(i, j));
    }
}

inline QuantumState read_state_snapshot(std::istream& is) {
    std::string kind, dims, t, l;
    if (!(is >> kind >> dims >> t >> l)) throw std::runtime_error("read_state_snapshot: bad header");
    const auto d = split(dims, 'x');
    if (d.size() != 2) throw std::runtime_error("read_state_snapshot: bad dims '" + dims + "'");
    const int spin_dim = static_cast<int>(parse_double(d[0]));
    const int fock_dim = static_cast<int>(parse_double(d[1]));
    const HilbertSpace space(spin_dim - 1, fock_dim);
    auto next = [&]() {
        std::string tok;
        if (!(is >> tok)) throw std::runtime_error("read_state_snapshot: truncated data");
        const auto f = split(tok, ',');
        if (f.size() != 2) throw std::runtime_error("read_state_snapshot: bad entry '" + tok + "'");
        return cplx(parse_double(f[0]), parse_double(f[1]));
    };
    if (kind == "pure") {
        Eigen::VectorXcd v(space.dim());
        for (Index i = 0; i < v.size(); ++i) v[i] = next();
        return QuantumState::pure(space, std::move(v), parse_double(t), parse_double(l));
    }
    if (kind == "density") {
        Eigen::MatrixXcd r(space.dim(), space.dim());
        for (Index i = 0; i < r.rows(); ++i)
            for (Index j = 0; j < r.cols(); ++j) r(i, j) = next();
        return QuantumState::density(space, std::move(r), parse_double(t), parse_double(l));
    }
    throw std::runtime_error("read_state_snapshot: unknown kind '" + kind + "'");
}

// --- sparse operators: "rows cols nnz" then "row col re im" ---

inline void write_sparse_triplets(std::ostream& os, const SparseOperator& op) {
    os << op.rows() << ' ' << op.cols() << ' ' << op.nnz() << '\n';
    for (const auto& e : op.entries())
        os << e.row << ' ' << e.col << ' ' << format_double(e.value.real()) << ' ' << format_double(e.value.imag())
           << '\n';
}

inline SparseOperator read_sparse_triplets(std::istream& is, bool hermitian = false) {
    Index rows = 0, cols = 0, nnz = 0;
    if (!(is >> rows >> cols >> nnz)) throw std::runtime_error("read_sparse_triplets: bad header");
    std::vector<SparseOperator::Entry> entries;
    entries.reserve(static_cast<std::size_t>(nnz));
    for (Index k = 0; k < nnz; ++k) {
        Index r, c;
        std::string re, im;
        if (!(is >> r >> c >> re >> im)) throw std::runtime_error("read_sparse_triplets: truncated data");
        entries.push_back({r, c, cplx(parse_double(re), parse_double(im))});
    }
    return SparseOperator::from_entries(rows, cols, entries, hermitian);
}

// --- quasi-distributions ---

inline void write_wigner_csv(std::ostream& os, const WignerField& w) {
    os << "x,p,W\n";
    for (int i = 0; i < w.grid.nx; ++i)
        for (int j = 0; j < w.grid.np; ++j)
            os << format_double(w.grid.x(i)) << ',' << format_double(w.grid.p(j)) << ',' << format_double(w.values(i, j))
               << '\n';
}

inline nlohmann::ordered_json wigner_metadata(const WignerField& w) {
    nlohmann::ordered_json h;
    h["format"] = "wigner-matrix";
    h["rows"] = "x";
    h["cols"] = "p";
    h["x_min"] = w.grid.x_min;
    h["x_max"] = w.grid.x_max;
    h["p_min"] = w.grid.p_min;
    h["p_max"] = w.grid.p_max;
    h["nx"] = w.grid.nx;
    h["np"] = w.grid.np;
    h["mode"] = to_string(w.mode);
    return h;
}

/// One header line "# {json}", then nx lines of np space-separated values.
inline void write_wigner_matrix(std::ostream& os, const WignerField& w) {
    os << "# " << wigner_metadata(w).dump() << '\n';
    for (int i = 0; i < w.grid.nx; ++i) {
        std::string line;
        for (int j = 0; j < w.grid.np; ++j) {
            if (j) line += ' ';
            line += format_double(w.values(i, j));
        }
        os << line << '\n';
    }
}

inline WignerField read_wigner_matrix(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || line.rfind("# ", 0) != 0) throw std::runtime_error("read_wigner_matrix: bad header");
    const auto h = nlohmann::json::parse(line.substr(2));
    WignerField w;
    w.grid.x_min = h.at("x_min");
    w.grid.x_max = h.at("x_max");
    w.grid.p_min = h.at("p_min");
    w.grid.p_max = h.at("p_max");
    w.grid.nx = h.at("nx");
    w.grid.np = h.at("np");
    w.mode = h.at("mode").get<std::string>() == "raw" ? WignerMode::raw : WignerMode::normalized;
    w.values.resize(w.grid.nx, w.grid.np);
    for (int i = 0; i < w.grid.nx; ++i) {
        if (!std::getline(is, line)) throw std::runtime_error("read_wigner_matrix: truncated data");
        const auto f = split(line, ' ');
        if (static_cast<int>(f.size()) != w.grid.np) throw std::runtime_error("read_wigner_matrix: wrong row length");
        for (int j = 0; j < w.grid.np; ++j) w.values(i, j) = parse_double(f[j]);
    }
    return w;
}

inline void write_awf_csv(std::ostream& os, const SphereField& f) {
    os << "theta,phi,W\n";
    for (int i = 0; i < f.grid.n_theta(); ++i)
        for (int k = 0; k < f.grid.n_phi(); ++k)
            os << format_double(f.grid.theta(i)) << ',' << format_double(f.grid.phi(k)) << ','
               << format_double(f.values(i, k)) << '\n';
}

// --- sweeps and fits ---

inline constexpr const char* kSweepHeader =
    "N,log2_upsilon,kappa,criterion,lambda_d,censored,peak_spin_sq,peak_field_sq,max_qubit_op,max_field_op";

/// lambda_d is nan unless an onset was found; censored is 1 when the ramp ended first.
/// Failed points carry nan everywhere and are listed in the manifest.
inline void write_sweep_csv(std::ostream& os, const SweepResult& r) {
    os << kSweepHeader << '\n';
    for (const auto& row : r.rows) {
        const bool found = row.status == OnsetStatus::found && !row.failed();
        const bool censored = row.status == OnsetStatus::censored && !row.failed();
        os << row.n << ',' << format_double(row.log2_upsilon) << ',' << format_double(row.kappa) << ','
           << to_string(row.criterion) << ',' << format_double(found ? row.lambda_d : NAN) << ',' << (censored ? 1 : 0)
           << ',' << format_double(row.peak_spin_sq) << ',' << format_double(row.peak_field_sq) << ','
           << format_double(row.max_qubit_op) << ',' << format_double(row.max_field_op) << '\n';
    }
}

inline SweepResult read_sweep_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || line != kSweepHeader) throw std::runtime_error("read_sweep_csv: unexpected header");
    SweepResult r;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        const auto f = split(line, ',');
        if (f.size() != 10) throw std::runtime_error("read_sweep_csv: wrong column count");
        SweepRow row;
        row.n = static_cast<int>(parse_double(f[0]));
        row.log2_upsilon = parse_double(f[1]);
        row.kappa = parse_double(f[2]);
        row.criterion = onset_criterion_from_string(std::string(f[3]));
        row.lambda_d = parse_double(f[4]);
        const bool censored = parse_double(f[5]) != 0.0;
        row.status = std::isfinite(row.lambda_d) ? OnsetStatus::found : censored ? OnsetStatus::censored : OnsetStatus::none;
        row.peak_spin_sq = parse_double(f[6]);
        row.peak_field_sq = parse_double(f[7]);
        row.max_qubit_op = parse_double(f[8]);
        row.max_field_op = parse_double(f[9]);
        r.rows.push_back(row);
    }
    return r;
}

// JSON has no nan or inf; they are written as null
inline std::string json_number(double v) { return std::isfinite(v) ? format_double(v) : "null"; }

inline std::string fit_report(const PowerLawFit& f, const std::string& quantity, double window_lo, double window_hi) {
    std::ostringstream os;
    os << "{\n";
    os << "  \"quantity\": \"" << quantity << "\",\n";
    os << "  \"exponent\": " << json_number(f.exponent) << ",\n";
    os << "  \"prefactor\": " << json_number(std::exp(f.log_prefactor)) << ",\n";
    os << "  \"log_prefactor\": " << json_number(f.log_prefactor) << ",\n";
    os << "  \"r_squared\": " << json_number(f.r_squared) << ",\n";
    os << "  \"points\": " << f.points_used << ",\n";
    os << "  \"window\": [" << json_number(window_lo) << ", " << json_number(window_hi) << "],\n";
    os << "  \"x_range\": [" << json_number(f.x_min) << ", " << json_number(f.x_max) << "]\n";
    os << "}\n";
    return os.str();
}

inline void write_gap_csv(std::ostream& os, const GapScan& scan) {
    os << "lambda,gap\n";
    for (std::size_t k = 0; k < scan.lambdas.size(); ++k)
        os << format_double(scan.lambdas[k]) << ',' << format_double(scan.gaps[k]) << '\n';
}

} // namespace dicke::io
