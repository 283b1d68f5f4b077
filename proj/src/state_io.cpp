#include "landau/state_io.hpp"

#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

#include "json.hpp"
#include "landau/errors.hpp"

namespace landau {

namespace {

constexpr std::array<char, 8> kMagic{'L', 'A', 'N', 'D', 'A', 'U', 'S', 'S'};

template <typename T>
void put_le(std::ostream& out, T value) {
  static_assert(std::is_integral_v<T>);
  for (std::size_t b = 0; b < sizeof(T); ++b) out.put(static_cast<char>((value >> (8 * b)) & 0xff));
}

template <typename T>
T get_le(std::istream& in) {
  T value = 0;
  for (std::size_t b = 0; b < sizeof(T); ++b) {
    const int c = in.get();
    if (c == std::char_traits<char>::eof()) throw FormatError("truncated state header");
    value |= static_cast<T>(static_cast<unsigned char>(c)) << (8 * b);
  }
  return value;
}

// Doubles in the header travel as their bit patterns so the round trip never
// depends on decimal formatting.
std::uint64_t bits(double v) { return std::bit_cast<std::uint64_t>(v); }
double from_bits(const nlohmann::json& j) { return std::bit_cast<double>(j.get<std::uint64_t>()); }

nlohmann::json header_of(const SampledState& s) {
  const GridSpec& g = s.grid;
  const PhysicalParams& p = s.params;
  nlohmann::json h;
  h["grid"] = {{"x_min", bits(g.x_min)}, {"x_max", bits(g.x_max)}, {"y_min", bits(g.y_min)},
               {"y_max", bits(g.y_max)}, {"n_x", g.n_x}, {"n_y", g.n_y},
               {"periodic_x", g.periodic_x}, {"periodic_y", g.periodic_y},
               {"frame", to_string(g.frame)}, {"twist_origin_x", bits(g.twist_origin_x)},
               {"twist_origin_t", bits(g.twist_origin_t)}};
  h["time"] = bits(s.time);
  h["params"] = {{"mass", bits(p.mass)}, {"charge", bits(p.charge)}, {"light_speed", bits(p.light_speed)},
                 {"hbar", bits(p.hbar)}, {"field_b", bits(p.field_b)}, {"field_e", bits(p.field_e)}};
  h["count"] = s.amplitudes.size();
  h["encoding"] = "binary64-le interleaved re/im; header doubles stored as uint64 bit patterns";
  return h;
}

}  // namespace

void write_state(std::ostream& out, const SampledState& state) {
  state.validate();
  const std::string header = header_of(state).dump();
  out.write(kMagic.data(), kMagic.size());
  put_le<std::uint32_t>(out, kStateFormatVersion);
  put_le<std::uint64_t>(out, header.size());
  out.write(header.data(), static_cast<std::streamsize>(header.size()));
  for (const cplx& a : state.amplitudes) {
    put_le<std::uint64_t>(out, bits(a.real()));
    put_le<std::uint64_t>(out, bits(a.imag()));
  }
  if (!out) throw Error("failed writing state");
}

SampledState read_state(std::istream& in) {
  std::array<char, 8> magic{};
  in.read(magic.data(), magic.size());
  if (!in || magic != kMagic) throw FormatError("not a state file (bad magic)");
  const auto version = get_le<std::uint32_t>(in);
  if (version != kStateFormatVersion) throw FormatError("unsupported state format version " + std::to_string(version));
  const auto length = get_le<std::uint64_t>(in);
  if (length > (1u << 20)) throw FormatError("state header too large");
  std::string text(length, '\0');
  in.read(text.data(), static_cast<std::streamsize>(length));
  if (!in) throw FormatError("truncated state header");
  SampledState s;
  try {
    const nlohmann::json h = nlohmann::json::parse(text);
    const auto& g = h.at("grid");
    s.grid.x_min = from_bits(g.at("x_min"));
    s.grid.x_max = from_bits(g.at("x_max"));
    s.grid.y_min = from_bits(g.at("y_min"));
    s.grid.y_max = from_bits(g.at("y_max"));
    s.grid.n_x = g.at("n_x").get<int>();
    s.grid.n_y = g.at("n_y").get<int>();
    s.grid.periodic_x = g.at("periodic_x").get<bool>();
    s.grid.periodic_y = g.at("periodic_y").get<bool>();
    const std::string frame = g.at("frame").get<std::string>();
    if (frame == to_string(GaugeFrame::Landau)) {
      s.grid.frame = GaugeFrame::Landau;
    } else if (frame == to_string(GaugeFrame::Twisted)) {
      s.grid.frame = GaugeFrame::Twisted;
    } else {
      throw FormatError("unknown gauge frame '" + frame + "'");
    }
    s.grid.twist_origin_x = from_bits(g.at("twist_origin_x"));
    s.grid.twist_origin_t = from_bits(g.at("twist_origin_t"));
    s.time = from_bits(h.at("time"));
    const auto& p = h.at("params");
    s.params.mass = from_bits(p.at("mass"));
    s.params.charge = from_bits(p.at("charge"));
    s.params.light_speed = from_bits(p.at("light_speed"));
    s.params.hbar = from_bits(p.at("hbar"));
    s.params.field_b = from_bits(p.at("field_b"));
    s.params.field_e = from_bits(p.at("field_e"));
    const auto count = h.at("count").get<std::size_t>();
    s.grid.validate();
    if (count != s.grid.size()) throw FormatError("amplitude count does not match the grid");
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("malformed state header: ") + e.what());
  }
  s.amplitudes.resize(s.grid.size());
  for (cplx& a : s.amplitudes) {
    const double re = std::bit_cast<double>(get_le<std::uint64_t>(in));
    const double im = std::bit_cast<double>(get_le<std::uint64_t>(in));
    a = cplx{re, im};
  }
  return s;
}

void save_state(const std::string& path, const SampledState& state) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  write_state(out, state);
}

SampledState load_state(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  return read_state(in);
}

}  // namespace landau
