/* Copyright 2026 The logad Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License. */

#include "logad/checkpoint.hpp"

#include <array>
#include <bit>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace logad {
namespace {

constexpr int kVersion = 1;

void put_le(std::ostream& out, double value) {
  auto bits = std::bit_cast<std::uint64_t>(value);
  std::array<char, 8> bytes{};
  for (auto& b : bytes) {
    b = static_cast<char>(bits & 0xffU);
    bits >>= 8;
  }
  out.write(bytes.data(), bytes.size());
}

double get_le(std::istream& in) {
  std::array<unsigned char, 8> bytes{};
  in.read(reinterpret_cast<char*>(bytes.data()), bytes.size());
  if (!in) {
    throw std::runtime_error("checkpoint: truncated payload");
  }
  std::uint64_t bits = 0;
  for (int i = 7; i >= 0; --i) {
    bits = (bits << 8) | bytes[static_cast<std::size_t>(i)];
  }
  return std::bit_cast<double>(bits);
}

}  // namespace

const Matrix& Checkpoint::tensor(const std::string& name) const {
  for (const auto& [n, m] : tensors) {
    if (n == name) {
      return m;
    }
  }
  throw std::runtime_error("checkpoint: missing tensor '" + name + "'");
}

const std::string& Checkpoint::meta_value(const std::string& key) const {
  auto it = meta.find(key);
  if (it == meta.end()) {
    throw std::runtime_error("checkpoint: missing meta '" + key + "'");
  }
  return it->second;
}

void Checkpoint::save(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw std::runtime_error("checkpoint: cannot open " + path.string() + " for writing");
  }
  out << "logad-checkpoint " << kVersion << '\n';
  out << "kind " << kind << '\n';
  for (const auto& [k, v] : meta) {
    out << "meta " << k << ' ' << v << '\n';
  }
  for (const auto& [name, m] : tensors) {
    out << "tensor " << name << ' ' << m.rows() << ' ' << m.cols() << '\n';
  }
  out << "end\n";
  for (const auto& entry : tensors) {
    const Matrix& m = entry.second;
    for (Eigen::Index i = 0; i < m.size(); ++i) {
      put_le(out, m.data()[i]);
    }
  }
  if (!out) {
    throw std::runtime_error("checkpoint: write failed for " + path.string());
  }
}

Checkpoint Checkpoint::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("checkpoint: cannot open " + path.string());
  }
  Checkpoint ckpt;
  std::string line;
  if (!std::getline(in, line) || line.rfind("logad-checkpoint ", 0) != 0) {
    throw std::runtime_error("checkpoint: bad magic in " + path.string());
  }
  if (std::stoi(line.substr(17)) != kVersion) {
    throw std::runtime_error("checkpoint: unsupported version in " + path.string());
  }
  std::vector<std::tuple<std::string, Eigen::Index, Eigen::Index>> shapes;
  bool ended = false;
  while (std::getline(in, line)) {
    if (line == "end") {
      ended = true;
      break;
    }
    std::istringstream fields(line);
    std::string tag;
    fields >> tag;
    if (tag == "kind") {
      fields >> ckpt.kind;
    } else if (tag == "meta") {
      std::string key;
      fields >> key;
      std::string value;
      std::getline(fields, value);
      if (!value.empty() && value.front() == ' ') {
        value.erase(0, 1);
      }
      ckpt.meta[key] = value;
    } else if (tag == "tensor") {
      std::string name;
      Eigen::Index rows = -1;
      Eigen::Index cols = -1;
      fields >> name >> rows >> cols;
      if (!fields || rows < 0 || cols < 0) {
        throw std::runtime_error("checkpoint: bad tensor line '" + line + "'");
      }
      shapes.emplace_back(name, rows, cols);
    } else {
      throw std::runtime_error("checkpoint: unexpected header line '" + line + "'");
    }
  }
  if (!ended) {
    throw std::runtime_error("checkpoint: header not terminated in " + path.string());
  }
  for (const auto& [name, rows, cols] : shapes) {
    Matrix m(rows, cols);
    for (Eigen::Index i = 0; i < m.size(); ++i) {
      m.data()[i] = get_le(in);
    }
    ckpt.tensors.emplace_back(name, std::move(m));
  }
  return ckpt;
}

}  // namespace logad
