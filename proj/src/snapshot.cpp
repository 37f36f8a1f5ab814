#include "subflow/snapshot.hpp"

#include <bit>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace subflow {

static_assert(std::endian::native == std::endian::little,
              "snapshot writer assumes a little-endian host");

void write_snapshot(const std::filesystem::path& path, const std::vector<Field>& components) {
  if (components.empty()) throw std::invalid_argument("write_snapshot: no components");
  const GridSpec& spec = components.front().spec();
  for (const Field& f : components)
    if (!(f.spec() == spec)) throw std::invalid_argument("write_snapshot: mismatched grids");

  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("write_snapshot: cannot open " + tmp.string());
    out << "SUBFLOW-SNAPSHOT v1\n"
        << "grid " << spec.nx() << " " << spec.ny() << " " << spec.nt() << "\n"
        << "components " << components.size() << "\n"
        << "dtype f64le\n\n";
    for (const Field& f : components)
      out.write(reinterpret_cast<const char*>(f.data()),
                static_cast<std::streamsize>(f.size() * sizeof(double)));
    if (!out) throw std::runtime_error("write_snapshot: short write to " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

Snapshot read_snapshot(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("read_snapshot: cannot open " + path.string());
  std::string line;
  auto next_line = [&]() {
    if (!std::getline(in, line)) throw std::runtime_error("read_snapshot: truncated header");
    return line;
  };
  if (next_line() != "SUBFLOW-SNAPSHOT v1") throw std::runtime_error("read_snapshot: bad magic");
  int nx = 0, ny = 0, nt = 0;
  {
    std::istringstream is(next_line());
    std::string tag;
    is >> tag >> nx >> ny >> nt;
    if (tag != "grid" || !is) throw std::runtime_error("read_snapshot: bad grid line");
  }
  int m = 0;
  {
    std::istringstream is(next_line());
    std::string tag;
    is >> tag >> m;
    if (tag != "components" || !is || m < 1) throw std::runtime_error("read_snapshot: bad components line");
  }
  if (next_line() != "dtype f64le") throw std::runtime_error("read_snapshot: unsupported dtype");
  if (!next_line().empty()) throw std::runtime_error("read_snapshot: missing blank separator");

  Snapshot snap{GridSpec(nx, ny, nt), {}};
  snap.components.reserve(m);
  for (int c = 0; c < m; ++c) {
    Field f(snap.spec);
    in.read(reinterpret_cast<char*>(f.data()),
            static_cast<std::streamsize>(f.size() * sizeof(double)));
    if (!in) throw std::runtime_error("read_snapshot: truncated data block");
    snap.components.push_back(std::move(f));
  }
  return snap;
}

}  // namespace subflow
