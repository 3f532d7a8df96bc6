#include "lanlab/trajectory.hpp"

#include <cinttypes>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace lanlab {

std::pair<int, int> Trajectory::block(const std::string& prefix) const {
  int offset = -1, count = 0;
  for (size_t i = 0; i < labels.size(); ++i) {
    const bool match = labels[i].rfind(prefix, 0) == 0 &&
                       labels[i].size() > prefix.size() &&
                       std::isdigit(static_cast<unsigned char>(labels[i][prefix.size()]));
    if (match) {
      if (offset < 0) offset = static_cast<int>(i);
      ++count;
    } else if (offset >= 0) {
      break;  // blocks are contiguous
    }
  }
  return {offset < 0 ? 0 : offset, count};
}

Eigen::MatrixXd Trajectory::z_values() const {
  const auto [offset, count] = block("z");
  if (count == 0) return values;
  return values.middleCols(offset, count);
}

std::vector<std::string> block_labels(int n, int l) {
  std::vector<std::string> labels;
  for (int i = 1; i <= n; ++i) labels.push_back("x" + std::to_string(i));
  for (int i = 1; i <= l; ++i) labels.push_back("y" + std::to_string(i));
  for (int i = 1; i <= n; ++i) labels.push_back("z" + std::to_string(i));
  return labels;
}

void write_csv(const Trajectory& traj, const std::string& path) {
  std::FILE* out = std::fopen(path.c_str(), "w");
  if (!out) throw std::runtime_error("write_csv: cannot open " + path);
  std::fputs("time", out);
  for (const auto& label : traj.labels) std::fprintf(out, ",%s", label.c_str());
  std::fputc('\n', out);
  for (Eigen::Index r = 0; r < traj.values.rows(); ++r) {
    std::fprintf(out, "%.17g", static_cast<double>(r) * traj.step);
    for (Eigen::Index c = 0; c < traj.values.cols(); ++c)
      std::fprintf(out, ",%.17g", traj.values(r, c));
    std::fputc('\n', out);
  }
  if (std::fclose(out) != 0) throw std::runtime_error("write_csv: close failed for " + path);
}

Trajectory read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("read_csv: cannot open " + path);
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("read_csv: empty file " + path);

  Trajectory traj;
  {
    std::stringstream header(line);
    std::string cell;
    bool first = true;
    while (std::getline(header, cell, ',')) {
      if (first) {
        if (cell != "time") throw std::runtime_error("read_csv: first column must be 'time'");
        first = false;
      } else {
        traj.labels.push_back(cell);
      }
    }
  }
  const int cols = static_cast<int>(traj.labels.size());
  std::vector<double> data;
  std::vector<double> times;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream row(line);
    std::string cell;
    int c = -1;
    while (std::getline(row, cell, ',')) {
      const double v = std::stod(cell);
      if (c < 0) times.push_back(v); else data.push_back(v);
      ++c;
    }
    if (c != cols) throw std::runtime_error("read_csv: ragged row in " + path);
  }
  const int rows = static_cast<int>(times.size());
  if (rows == 0) throw std::runtime_error("read_csv: no data rows in " + path);
  traj.step = rows > 1 ? (times.back() - times.front()) / (rows - 1) : 0.0;
  traj.values.resize(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) traj.values(r, c) = data[static_cast<size_t>(r) * cols + c];
  return traj;
}

namespace {

constexpr char kMagic[8] = {'L', 'A', 'N', 'T', 'R', 'A', 'J', '1'};

void put_u64(std::FILE* out, uint64_t v) {
  unsigned char raw[8];
  for (int i = 0; i < 8; ++i) raw[i] = static_cast<unsigned char>(v >> (8 * i));
  std::fwrite(raw, 1, 8, out);
}

uint64_t get_u64(std::FILE* in) {
  unsigned char raw[8];
  if (std::fread(raw, 1, 8, in) != 8) throw std::runtime_error("binary trajectory: truncated header");
  uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<uint64_t>(raw[i]) << (8 * i);
  return v;
}

uint64_t bits_of(double x) {
  uint64_t v;
  std::memcpy(&v, &x, sizeof v);
  return v;
}

double double_of(uint64_t v) {
  double x;
  std::memcpy(&x, &v, sizeof x);
  return x;
}

}  // namespace

void write_binary(const Trajectory& traj, const std::string& path) {
  std::FILE* out = std::fopen(path.c_str(), "wb");
  if (!out) throw std::runtime_error("write_binary: cannot open " + path);
  std::fwrite(kMagic, 1, 8, out);
  put_u64(out, static_cast<uint64_t>(traj.values.rows()));
  put_u64(out, static_cast<uint64_t>(traj.values.cols()));
  put_u64(out, bits_of(traj.step));
  put_u64(out, traj.seed);
  for (const auto& label : traj.labels) {
    put_u64(out, label.size());
    std::fwrite(label.data(), 1, label.size(), out);
  }
  for (Eigen::Index r = 0; r < traj.values.rows(); ++r)
    for (Eigen::Index c = 0; c < traj.values.cols(); ++c) put_u64(out, bits_of(traj.values(r, c)));
  if (std::fclose(out) != 0) throw std::runtime_error("write_binary: close failed for " + path);
}

Trajectory read_binary(const std::string& path) {
  std::FILE* in = std::fopen(path.c_str(), "rb");
  if (!in) throw std::runtime_error("read_binary: cannot open " + path);
  char magic[8];
  if (std::fread(magic, 1, 8, in) != 8 || std::memcmp(magic, kMagic, 8) != 0) {
    std::fclose(in);
    throw std::runtime_error("read_binary: bad magic in " + path);
  }
  Trajectory traj;
  const uint64_t rows = get_u64(in);
  const uint64_t cols = get_u64(in);
  traj.step = double_of(get_u64(in));
  traj.seed = get_u64(in);
  for (uint64_t c = 0; c < cols; ++c) {
    const uint64_t len = get_u64(in);
    std::string label(len, '\0');
    if (std::fread(label.data(), 1, len, in) != len) {
      std::fclose(in);
      throw std::runtime_error("read_binary: truncated label in " + path);
    }
    traj.labels.push_back(label);
  }
  traj.values.resize(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (uint64_t r = 0; r < rows; ++r)
    for (uint64_t c = 0; c < cols; ++c)
      traj.values(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = double_of(get_u64(in));
  std::fclose(in);
  return traj;
}

}  // namespace lanlab
