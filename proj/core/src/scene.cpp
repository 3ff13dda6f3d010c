#include "viscid/scene.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "viscid/level_set.hpp"

namespace viscid {

using nlohmann::json;

Shape Shape::box(Vec2 lo, Vec2 hi, std::uint8_t color) {
  Shape s;
  s.kind = Kind::Box;
  s.lo = lo;
  s.hi = hi;
  s.color = color;
  return s;
}

Shape Shape::disc(Vec2 center, double radius, std::uint8_t color) {
  Shape s;
  s.kind = Kind::Disc;
  s.lo = center;
  s.radius = radius;
  s.color = color;
  return s;
}

double Shape::distance(Vec2 x) const {
  if (kind == Kind::Disc) return std::hypot(x.x - lo.x, x.y - lo.y) - radius;
  const double cx = 0.5 * (lo.x + hi.x), cy = 0.5 * (lo.y + hi.y);
  const double qx = std::abs(x.x - cx) - 0.5 * (hi.x - lo.x);
  const double qy = std::abs(x.y - cy) - 0.5 * (hi.y - lo.y);
  const double outside = std::hypot(std::max(qx, 0.0), std::max(qy, 0.0));
  return outside + std::min(std::max(qx, qy), 0.0);
}

bool Shape::inside_domain(Vec2 domain) const {
  constexpr double tol = 1e-12;
  if (kind == Kind::Disc)
    return radius > 0.0 && lo.x - radius >= -tol && lo.y - radius >= -tol && lo.x + radius <= domain.x + tol &&
           lo.y + radius <= domain.y + tol;
  return lo.x < hi.x && lo.y < hi.y && lo.x >= -tol && lo.y >= -tol && hi.x <= domain.x + tol &&
         hi.y <= domain.y + tol;
}

void Scene::validate() const {
  if (!(domain.x > 0.0) || !(domain.y > 0.0)) throw InvalidArgument("scene: domain must be positive");
  if (dims.nx < 1 || dims.ny < 1 || !(dims.dx > 0.0)) throw InvalidArgument("scene: invalid grid");
  if (std::abs(dims.nx * dims.dx - domain.x) > 1e-9 * domain.x ||
      std::abs(dims.ny * dims.dx - domain.y) > 1e-9 * domain.y)
    throw InvalidArgument("scene: grid dims are inconsistent with the domain (cells must be square)");
  if (!(dt > 0.0) || !std::isfinite(dt)) throw InvalidArgument("scene: dt must be positive");
  if (!(rho > 0.0)) throw InvalidArgument("scene: rho must be positive");
  if (!(mu >= 0.0)) throw InvalidArgument("scene: mu must be non-negative");
  if (!std::isfinite(gravity.x) || !std::isfinite(gravity.y)) throw InvalidArgument("scene: gravity must be finite");
  if (!(jitter >= 0.0 && jitter < 1.0)) throw InvalidArgument("scene: jitter must lie in [0, 1)");
  for (const ViscosityRegion& r : mu_regions) {
    if (!(r.mu >= 0.0)) throw InvalidArgument("scene: region mu must be non-negative");
    if (!r.shape.inside_domain(domain)) throw InvalidArgument("scene: viscosity region outside the domain");
  }
  for (const Shape& s : fluids)
    if (!s.inside_domain(domain)) throw InvalidArgument("scene: fluid shape outside the domain");
  for (const Shape& s : solids)
    if (!s.inside_domain(domain)) throw InvalidArgument("scene: solid shape outside the domain");
}

namespace {

Vec2 read_vec2(const json& j, const char* key) {
  if (!j.is_array() || j.size() != 2) throw FormatError(std::string("scene: '") + key + "' must be [x, y]");
  return {j[0].get<double>(), j[1].get<double>()};
}

void reject_unknown(const json& obj, std::initializer_list<const char*> allowed, const char* where) {
  for (const auto& item : obj.items()) {
    const bool ok = std::any_of(allowed.begin(), allowed.end(), [&](const char* k) { return item.key() == k; });
    if (!ok) throw FormatError(std::string("scene: unknown key '") + item.key() + "' in " + where);
  }
}

Shape read_shape(const json& j) {
  if (!j.is_object()) throw FormatError("scene: shape must be an object");
  reject_unknown(j, {"box", "disc", "color", "mu"}, "shape");
  std::uint8_t color = 0;
  if (j.contains("color")) {
    const int c = j.at("color").get<int>();
    if (c < 0 || c > 255) throw FormatError("scene: color must be in [0, 255]");
    color = static_cast<std::uint8_t>(c);
  }
  if (j.contains("box") == j.contains("disc")) throw FormatError("scene: shape needs exactly one of 'box' or 'disc'");
  if (j.contains("box")) {
    const json& b = j.at("box");
    if (!b.is_array() || b.size() != 4) throw FormatError("scene: 'box' must be [x0, y0, x1, y1]");
    return Shape::box({b[0].get<double>(), b[1].get<double>()}, {b[2].get<double>(), b[3].get<double>()}, color);
  }
  const json& d = j.at("disc");
  if (!d.is_array() || d.size() != 3) throw FormatError("scene: 'disc' must be [cx, cy, r]");
  return Shape::disc({d[0].get<double>(), d[1].get<double>()}, d[2].get<double>(), color);
}

json shape_json(const Shape& s) {
  json j;
  if (s.kind == Shape::Kind::Box)
    j["box"] = {s.lo.x, s.lo.y, s.hi.x, s.hi.y};
  else
    j["disc"] = {s.lo.x, s.lo.y, s.radius};
  if (s.color) j["color"] = s.color;
  return j;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

// Uniform in [-1, 1) from a hash value.
double unit_symmetric(std::uint64_t h) { return static_cast<double>(h >> 11) * 0x1.0p-52 - 1.0; }

}  // namespace

Scene parse_scene(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw FormatError(std::string("scene: invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw FormatError("scene: top level must be an object");
  reject_unknown(j,
                 {"name", "domain", "grid", "dt", "gravity", "rho", "mu", "fluids", "solids", "solid_velocity", "walls",
                  "seed", "jitter"},
                 "scene");
  Scene s;
  try {
    if (j.contains("name")) s.name = j.at("name").get<std::string>();
    if (!j.contains("domain") || !j.contains("grid")) throw FormatError("scene: 'domain' and 'grid' are required");
    s.domain = read_vec2(j.at("domain"), "domain");
    const json& g = j.at("grid");
    if (!g.is_array() || g.size() != 2) throw FormatError("scene: 'grid' must be [nx, ny]");
    const int nx = g[0].get<int>(), ny = g[1].get<int>();
    if (nx < 1 || ny < 1) throw InvalidArgument("scene: grid dims must be positive");
    s.dims = GridDims(nx, ny, s.domain.x / nx);
    if (j.contains("dt")) s.dt = j.at("dt").get<double>();
    if (j.contains("gravity")) s.gravity = read_vec2(j.at("gravity"), "gravity");
    if (j.contains("rho")) s.rho = j.at("rho").get<double>();
    if (j.contains("mu")) {
      const json& m = j.at("mu");
      if (m.is_number()) {
        s.mu = m.get<double>();
      } else if (m.is_object()) {
        reject_unknown(m, {"default", "regions"}, "mu");
        s.mu = m.value("default", 0.0);
        if (m.contains("regions")) {
          for (const json& r : m.at("regions")) {
            if (!r.contains("mu")) throw FormatError("scene: viscosity region needs 'mu'");
            s.mu_regions.push_back({read_shape(r), r.at("mu").get<double>()});
          }
        }
      } else {
        throw FormatError("scene: 'mu' must be a number or an object");
      }
    }
    auto shapes = [&](const char* key, std::vector<Shape>& out) {
      if (!j.contains(key)) return;
      for (const json& e : j.at(key)) {
        if (e.contains("mu")) throw FormatError(std::string("scene: unknown key 'mu' in ") + key);
        out.push_back(read_shape(e));
      }
    };
    shapes("fluids", s.fluids);
    shapes("solids", s.solids);
    if (j.contains("solid_velocity")) s.solid_velocity = read_vec2(j.at("solid_velocity"), "solid_velocity");
    if (j.contains("walls")) s.walls = j.at("walls").get<bool>();
    if (j.contains("seed")) s.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("jitter")) s.jitter = j.at("jitter").get<double>();
  } catch (const json::exception& e) {
    throw FormatError(std::string("scene: ") + e.what());
  }
  s.validate();
  return s;
}

Scene load_scene(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open scene " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_scene(ss.str());
}

std::string scene_to_json(const Scene& s) {
  json j;
  j["name"] = s.name;
  j["domain"] = {s.domain.x, s.domain.y};
  j["grid"] = {s.dims.nx, s.dims.ny};
  j["dt"] = s.dt;
  j["gravity"] = {s.gravity.x, s.gravity.y};
  j["rho"] = s.rho;
  if (s.mu_regions.empty()) {
    j["mu"] = s.mu;
  } else {
    json regions = json::array();
    for (const ViscosityRegion& r : s.mu_regions) {
      json e = shape_json(r.shape);
      e["mu"] = r.mu;
      regions.push_back(e);
    }
    j["mu"] = {{"default", s.mu}, {"regions", regions}};
  }
  j["fluids"] = json::array();
  for (const Shape& f : s.fluids) j["fluids"].push_back(shape_json(f));
  j["solids"] = json::array();
  for (const Shape& f : s.solids) j["solids"].push_back(shape_json(f));
  j["solid_velocity"] = {s.solid_velocity.x, s.solid_velocity.y};
  j["walls"] = s.walls;
  j["seed"] = s.seed;
  j["jitter"] = s.jitter;
  return j.dump(2);
}

FluidParams make_params(const Scene& scene) {
  FluidParams p = FluidParams::uniform(scene.dims, scene.rho, scene.mu, scene.dt);
  for (const ViscosityRegion& r : scene.mu_regions)
    for (int j = 0; j < scene.dims.ny; ++j)
      for (int i = 0; i < scene.dims.nx; ++i)
        if (r.shape.contains(cell_pos(scene.dims, i, j))) p.mu(i, j) = r.mu;
  p.validate(scene.dims);
  return p;
}

SolidSdf2 build_solid(const Scene& scene) {
  const GridDims& d = scene.dims;
  const double diag = std::hypot(d.width(), d.height());
  SolidSdf2 solid(d, diag);
  solid.velocity = scene.solid_velocity;
  const double h = 0.5 * d.dx;
  for (int b = 0; b < d.sym_ny(); ++b)
    for (int a = 0; a < d.sym_nx(); ++a) {
      const Vec2 x{a * h, b * h};
      double D = diag;
      if (scene.walls) {
        // Exact border positions are evaluated from indices so both sides of
        // the domain see identical distances.
        const double wx = std::min(a, d.sym_nx() - 1 - a) * h;
        const double wy = std::min(b, d.sym_ny() - 1 - b) * h;
        D = std::min(wx, wy);
      }
      for (const Shape& s : scene.solids) D = std::min(D, s.distance(x));
      solid.D(a, b) = D;
    }
  return solid;
}

ParticleSet seed_particles(const Scene& scene) {
  const GridDims& d = scene.dims;
  const SolidSdf2 solid = build_solid(scene);
  const double h = 0.5 * d.dx;
  const double lo = particle_margin(d);
  const double hi_x = d.width() - lo, hi_y = d.height() - lo;
  const int sx_count = 2 * d.nx, sy_count = 2 * d.ny;
  const double amp = 0.5 * scene.jitter * h;

  ParticleSet particles;
  for (int sy = 0; sy < sy_count; ++sy) {
    for (int sx = 0; sx < sx_count; ++sx) {
      const int mirror = sx_count - 1 - sx;
      const int key_x = std::min(sx, mirror);
      std::uint64_t hkey = splitmix64(scene.seed ^ splitmix64(static_cast<std::uint64_t>(key_x) << 32 |
                                                              static_cast<std::uint32_t>(sy)));
      const double jx = amp * unit_symmetric(hkey);
      const double jy = amp * unit_symmetric(splitmix64(hkey));
      // Offsets measured from the nearer domain side so mirrored seeds are
      // exact reflections.
      Vec2 x;
      if (sx == key_x)
        x.x = (sx + 0.5) * h + jx;
      else
        x.x = d.width() - ((mirror + 0.5) * h + jx);
      x.y = (sy + 0.5) * h + jy;

      if (x.x < lo || x.x > hi_x || x.y < lo || x.y > hi_y) continue;
      const Shape* owner = nullptr;
      for (const Shape& s : scene.fluids)
        if (s.contains(x)) {
          owner = &s;
          break;
        }
      if (!owner) continue;
      if (sample_solid(solid, d, x) <= 0.0) continue;
      particles.push_back(x, {}, owner->color);
    }
  }
  particles.mass = scene.rho * d.dx * d.dx / 4.0;
  return particles;
}

}  // namespace viscid
