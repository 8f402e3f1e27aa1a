#include "usvwave/runlog.hpp"

#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "usvwave/errors.hpp"

namespace usvwave {

const char* const kLogSchema = "# usvwave-log v1";

namespace {

const char* kSensorNames[4] = {"gps", "imu", "uvdar", "apriltag"};

void append_double(std::string& out, double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  out.append(buf, ptr);
}

double parse_double(std::string_view tok, const std::string& context) {
  if (tok == "nan" || tok == "-nan") {
    return std::nan("");
  }
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    throw std::runtime_error("runlog: malformed number '" + std::string(tok) + "' in " + context);
  }
  return v;
}

}  // namespace

const std::vector<std::string>& log_columns() {
  static const std::vector<std::string> columns = [] {
    std::vector<std::string> c;
    c.push_back("t");
    const char* pose[6] = {"x", "y", "z", "phi", "theta", "psi"};
    const char* vel[6] = {"u", "v", "w", "p", "q", "r"};
    for (auto* s : pose) c.push_back(std::string("truth_") + s);
    for (auto* s : vel) c.push_back(std::string("truth_") + s);
    for (auto* s : pose) c.push_back(std::string("est_") + s);
    for (auto* s : vel) c.push_back(std::string("est_") + s);
    c.push_back("pred_target_t");
    for (auto* s : pose) c.push_back(std::string("pred_") + s);
    for (auto* s : {"x", "y", "z", "vx", "vy", "vz"}) c.push_back(std::string("uav_") + s);
    for (auto* s : {"x", "y", "z", "vx", "vy", "vz"}) c.push_back(std::string("sp_") + s);
    c.push_back("phase");
    for (auto* name : kSensorNames) {
      c.push_back(std::string(name) + "_accepted");
      c.push_back(std::string(name) + "_gated");
      c.push_back(std::string(name) + "_stale");
    }
    c.push_back("touchdown_rel_speed");
    return c;
  }();
  return columns;
}

void write_runlog_csv(const RunLog& log, std::ostream& os) {
  std::string out;
  out += kLogSchema;
  out += " seed=";
  out += std::to_string(log.seed);
  out += " dt=";
  append_double(out, log.dt);
  out += '\n';
  const auto& columns = log_columns();
  for (size_t i = 0; i < columns.size(); ++i) {
    if (i > 0) out += ',';
    out += columns[i];
  }
  out += '\n';

  for (const auto& row : log.rows) {
    append_double(out, row.t);
    auto push = [&out](double v) {
      out += ',';
      append_double(out, v);
    };
    for (int i = 0; i < 6; ++i) push(row.truth_pose[i]);
    for (int i = 0; i < 6; ++i) push(row.truth_vel[i]);
    for (int i = 0; i < 6; ++i) push(row.est_pose[i]);
    for (int i = 0; i < 6; ++i) push(row.est_vel[i]);
    push(row.pred_target_t);
    for (int i = 0; i < 6; ++i) push(row.pred_pose[i]);
    for (int i = 0; i < 3; ++i) push(row.uav_pos[i]);
    for (int i = 0; i < 3; ++i) push(row.uav_vel[i]);
    for (int i = 0; i < 3; ++i) push(row.sp_pos[i]);
    for (int i = 0; i < 3; ++i) push(row.sp_vel[i]);
    out += ',';
    out += std::to_string(row.phase);
    for (int s = 0; s < 4; ++s) {
      out += ',';
      out += std::to_string(row.accepted[s]);
      out += ',';
      out += std::to_string(row.gated[s]);
      out += ',';
      out += std::to_string(row.dropped_stale[s]);
    }
    push(row.touchdown_rel_speed);
    out += '\n';
  }
  os << out;
}

void write_runlog_csv(const RunLog& log, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) {
    throw std::runtime_error("runlog: cannot open '" + path + "' for writing");
  }
  write_runlog_csv(log, f);
}

RunLog read_runlog_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line.rfind(kLogSchema, 0) != 0) {
    throw std::runtime_error("runlog: missing or unsupported schema line");
  }
  RunLog log;
  {
    std::istringstream hs(line.substr(std::string(kLogSchema).size()));
    std::string field;
    while (hs >> field) {
      if (field.rfind("seed=", 0) == 0) {
        log.seed = std::stoul(field.substr(5));
      } else if (field.rfind("dt=", 0) == 0) {
        log.dt = parse_double(field.substr(3), "header");
      }
    }
  }
  if (!std::getline(is, line)) {
    throw std::runtime_error("runlog: missing column header");
  }

  const size_t n_cols = log_columns().size();
  std::vector<std::string_view> tokens;
  size_t line_no = 2;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty()) {
      continue;
    }
    tokens.clear();
    size_t start = 0;
    while (true) {
      const size_t comma = line.find(',', start);
      if (comma == std::string::npos) {
        tokens.emplace_back(line.data() + start, line.size() - start);
        break;
      }
      tokens.emplace_back(line.data() + start, comma - start);
      start = comma + 1;
    }
    if (tokens.size() != n_cols) {
      throw std::runtime_error("runlog: wrong column count at line " + std::to_string(line_no));
    }
    const std::string ctx = "line " + std::to_string(line_no);
    size_t i = 0;
    auto next = [&]() { return parse_double(tokens[i++], ctx); };
    RunLogRow row;
    row.t = next();
    for (int k = 0; k < 6; ++k) row.truth_pose[k] = next();
    for (int k = 0; k < 6; ++k) row.truth_vel[k] = next();
    for (int k = 0; k < 6; ++k) row.est_pose[k] = next();
    for (int k = 0; k < 6; ++k) row.est_vel[k] = next();
    row.pred_target_t = next();
    for (int k = 0; k < 6; ++k) row.pred_pose[k] = next();
    for (int k = 0; k < 3; ++k) row.uav_pos[k] = next();
    for (int k = 0; k < 3; ++k) row.uav_vel[k] = next();
    for (int k = 0; k < 3; ++k) row.sp_pos[k] = next();
    for (int k = 0; k < 3; ++k) row.sp_vel[k] = next();
    row.phase = static_cast<int>(next());
    for (int s = 0; s < 4; ++s) {
      row.accepted[s] = static_cast<long>(next());
      row.gated[s] = static_cast<long>(next());
      row.dropped_stale[s] = static_cast<long>(next());
    }
    row.touchdown_rel_speed = next();
    log.rows.push_back(row);
  }
  return log;
}

RunLog read_runlog_csv(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) {
    throw std::runtime_error("runlog: cannot open '" + path + "'");
  }
  return read_runlog_csv(f);
}

}  // namespace usvwave
