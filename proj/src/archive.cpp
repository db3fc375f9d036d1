#include "msarpool/archive.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>

#include "msarpool/errors.hpp"

namespace msarpool {

namespace {

constexpr char kMagic[8] = {'M', 'S', 'A', 'R', 'D', 'R', 'W', '1'};

template <typename T>
void put(std::ofstream& os, const T& v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T get(std::ifstream& is) {
  T v{};
  is.read(reinterpret_cast<char*>(&v), sizeof(T));
  return v;
}

void put_vec(std::ofstream& os, const Eigen::VectorXd& v) {
  put<std::uint32_t>(os, static_cast<std::uint32_t>(v.size()));
  os.write(reinterpret_cast<const char*>(v.data()),
           static_cast<std::streamsize>(sizeof(double) * v.size()));
}

Eigen::VectorXd get_vec(std::ifstream& is) {
  const auto n = get<std::uint32_t>(is);
  Eigen::VectorXd v(n);
  is.read(reinterpret_cast<char*>(v.data()),
          static_cast<std::streamsize>(sizeof(double) * n));
  return v;
}

}  // namespace

void save_draws(const PosteriorDraws& draws, const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw validation_error("cannot open '" + path + "' for writing");
  os.write(kMagic, sizeof(kMagic));
  put<std::int32_t>(os, draws.view_id);
  put<std::int32_t>(os, draws.window_start.index());
  put<std::int32_t>(os, draws.window_end.index());
  put<std::uint64_t>(os, draws.seed);
  put<std::int32_t>(os, draws.burn_in);
  put<std::int32_t>(os, draws.keep);
  put<std::int32_t>(os, draws.thin);
  put<std::int32_t>(os, draws.num_regimes);
  put<std::int32_t>(os, draws.lag_order);
  put<std::uint32_t>(os, static_cast<std::uint32_t>(draws.draws.size()));
  for (const auto& d : draws.draws) {
    put_vec(os, d.beta);
    put_vec(os, d.alpha);
    put_vec(os, d.sigma2);
    put<std::uint32_t>(os, static_cast<std::uint32_t>(d.xi.rows()));
    os.write(reinterpret_cast<const char*>(d.xi.data()),
             static_cast<std::streamsize>(sizeof(double) * d.xi.size()));
    put<std::uint32_t>(os, static_cast<std::uint32_t>(d.states.size()));
    os.write(reinterpret_cast<const char*>(d.states.data()),
             static_cast<std::streamsize>(sizeof(int) * d.states.size()));
    put<double>(os, d.c0_scale);
  }
  if (!os) throw validation_error("write failed for '" + path + "'");
}

PosteriorDraws load_draws(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw validation_error("cannot open '" + path + "'");
  char magic[8];
  is.read(magic, sizeof(magic));
  if (!is || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0) {
    throw validation_error("'" + path + "' is not a draw archive");
  }
  PosteriorDraws out;
  out.view_id = get<std::int32_t>(is);
  out.window_start = Quarter(get<std::int32_t>(is));
  out.window_end = Quarter(get<std::int32_t>(is));
  out.seed = get<std::uint64_t>(is);
  out.burn_in = get<std::int32_t>(is);
  out.keep = get<std::int32_t>(is);
  out.thin = get<std::int32_t>(is);
  out.num_regimes = get<std::int32_t>(is);
  out.lag_order = get<std::int32_t>(is);
  const auto count = get<std::uint32_t>(is);
  out.draws.resize(count);
  for (auto& d : out.draws) {
    d.beta = get_vec(is);
    d.alpha = get_vec(is);
    d.sigma2 = get_vec(is);
    const auto k = get<std::uint32_t>(is);
    d.xi.resize(k, k);
    is.read(reinterpret_cast<char*>(d.xi.data()),
            static_cast<std::streamsize>(sizeof(double) * d.xi.size()));
    const auto n = get<std::uint32_t>(is);
    d.states.resize(n);
    is.read(reinterpret_cast<char*>(d.states.data()),
            static_cast<std::streamsize>(sizeof(int) * d.states.size()));
    d.c0_scale = get<double>(is);
  }
  if (!is) throw validation_error("truncated draw archive '" + path + "'");
  return out;
}

}  // namespace msarpool
