#include "sdcpse/bench/io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "sdcpse/errors.hpp"

namespace sdcpse::bench {

namespace {

std::string to_lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string item;
    std::stringstream ss(line);
    while (std::getline(ss, item, sep)) {
        // trim
        const auto b = item.find_first_not_of(" \t\r");
        const auto e = item.find_last_not_of(" \t\r");
        out.push_back(b == std::string::npos ? "" : item.substr(b, e - b + 1));
    }
    return out;
}

double parse_double(const std::string& s, const std::string& path, std::size_t line) {
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ParseError(path, line, "cannot parse number '" + s + "'");
    }
}

PointLabel parse_label(const std::string& s, const std::string& path, std::size_t line) {
    if (s == "interior" || s.empty()) return PointLabel::interior;
    if (s == "dirichlet") return PointLabel::dirichlet;
    if (s == "ghost") return PointLabel::ghost;
    throw ParseError(path, line, "unknown point label '" + s + "'");
}

const char* label_name(PointLabel l) {
    switch (l) {
        case PointLabel::dirichlet: return "dirichlet";
        case PointLabel::ghost: return "ghost";
        default: return "interior";
    }
}

void check_normals(LoadedCloud& c, const std::string& path) {
    if (!c.has_normals) return;
    bool warned = false;
    for (std::size_t p = 0; p < c.normals.size(); ++p) {
        double len = 0.0;
        for (int i = 0; i < c.dim; ++i) len += c.normals[p][i] * c.normals[p][i];
        len = std::sqrt(len);
        if (std::abs(len - 1.0) <= 1e-12) continue;
        if (std::abs(len - 1.0) > 1e-3)
            throw ConfigError(path + ": normal of point " + std::to_string(p) +
                              " has length " + std::to_string(len) + ", rejected");
        if (!warned) {
            std::cerr << "warning: " << path << ": renormalizing normals within 1e-3 of unit\n";
            warned = true;
        }
        for (int i = 0; i < c.dim; ++i) c.normals[p][i] /= len;
    }
}

LoadedCloud load_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open " + path);
    std::string line;
    std::size_t lineno = 0;
    if (!std::getline(in, line)) throw ParseError(path, 1, "empty file");
    ++lineno;

    const auto header = split(to_lower(line), ',');
    LoadedCloud c;
    bool has_label = false;
    if (header.size() >= 1 && header[0] == "x") {
        const std::vector<std::string> h2{"x", "y", "nx", "ny"};
        const std::vector<std::string> h3{"x", "y", "z", "nx", "ny", "nz"};
        auto matches = [&](const std::vector<std::string>& want) {
            if (header.size() != want.size() && header.size() != want.size() + 1) return false;
            for (std::size_t i = 0; i < want.size(); ++i)
                if (header[i] != want[i]) return false;
            if (header.size() == want.size() + 1 && header.back() != "label") return false;
            return true;
        };
        if (matches(h2)) {
            c.dim = 2;
            has_label = header.size() == 5;
        } else if (matches(h3)) {
            c.dim = 3;
            has_label = header.size() == 7;
        } else {
            throw ParseError(path, 1, "unrecognized header '" + line + "'");
        }
    } else {
        throw ParseError(path, 1, "expected header starting with 'x'");
    }
    c.has_normals = true;

    const std::size_t want = static_cast<std::size_t>(2 * c.dim) + (has_label ? 1 : 0);
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        const auto f = split(line, ',');
        if (f.size() != want)
            throw ParseError(path, lineno,
                             "expected " + std::to_string(want) + " fields, got " +
                                 std::to_string(f.size()));
        Vec3 pos{0, 0, 0}, nrm{0, 0, 0};
        for (int i = 0; i < c.dim; ++i) pos[i] = parse_double(f[i], path, lineno);
        for (int i = 0; i < c.dim; ++i) nrm[i] = parse_double(f[c.dim + i], path, lineno);
        c.positions.push_back(pos);
        c.normals.push_back(nrm);
        c.labels.push_back(has_label ? parse_label(f.back(), path, lineno) : PointLabel::interior);
    }
    check_normals(c, path);
    return c;
}

LoadedCloud load_ply(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open " + path);
    std::string line;
    std::size_t lineno = 0;

    auto next_line = [&]() {
        if (!std::getline(in, line)) throw ParseError(path, lineno, "unexpected end of file");
        ++lineno;
    };

    next_line();
    if (to_lower(line) != "ply") throw ParseError(path, lineno, "not a PLY file");

    std::size_t vertex_count = 0;
    std::vector<std::string> props;
    bool in_vertex_element = false;
    bool ascii = false;
    while (true) {
        next_line();
        const auto tok = split(line, ' ');
        if (tok.empty()) continue;
        if (tok[0] == "format") {
            ascii = tok.size() >= 2 && tok[1] == "ascii";
        } else if (tok[0] == "comment") {
            continue;
        } else if (tok[0] == "element") {
            in_vertex_element = tok.size() >= 3 && tok[1] == "vertex";
            if (in_vertex_element) vertex_count = std::stoull(tok[2]);
        } else if (tok[0] == "property" && in_vertex_element) {
            if (tok.size() >= 3 && tok[1] != "list") props.push_back(to_lower(tok.back()));
        } else if (tok[0] == "end_header") {
            break;
        }
    }
    if (!ascii) throw ParseError(path, lineno, "only ASCII PLY is supported");

    auto find_prop = [&](const char* name) {
        const auto it = std::find(props.begin(), props.end(), name);
        return it == props.end() ? static_cast<std::ptrdiff_t>(-1)
                                 : std::distance(props.begin(), it);
    };
    const std::ptrdiff_t ix = find_prop("x"), iy = find_prop("y"), iz = find_prop("z");
    const std::ptrdiff_t inx = find_prop("nx"), iny = find_prop("ny"), inz = find_prop("nz");
    if (ix < 0 || iy < 0 || iz < 0) throw ParseError(path, lineno, "missing x/y/z properties");

    LoadedCloud c;
    c.dim = 3;
    c.has_normals = inx >= 0 && iny >= 0 && inz >= 0;
    for (std::size_t v = 0; v < vertex_count; ++v) {
        next_line();
        const auto f = split(line, ' ');
        if (f.size() < props.size())
            throw ParseError(path, lineno, "expected " + std::to_string(props.size()) + " fields");
        Vec3 pos{parse_double(f[ix], path, lineno), parse_double(f[iy], path, lineno),
                 parse_double(f[iz], path, lineno)};
        c.positions.push_back(pos);
        if (c.has_normals)
            c.normals.push_back({parse_double(f[inx], path, lineno),
                                 parse_double(f[iny], path, lineno),
                                 parse_double(f[inz], path, lineno)});
        c.labels.push_back(PointLabel::interior);
    }
    if (!c.has_normals) c.normals.assign(c.positions.size(), Vec3{0, 0, 1});
    check_normals(c, path);
    return c;
}

}  // namespace

SurfacePointCloud LoadedCloud::cloud() const {
    if (!has_normals)
        throw ConfigError("point file has no normals; estimate them first "
                          "(--estimate-normals)");
    SurfacePointCloud c;
    c.dim = dim;
    c.positions = positions;
    c.normals = normals;
    c.labels = labels;
    c.validate();
    return c;
}

LoadedCloud load_point_cloud(const std::string& path) {
    const auto dot = path.find_last_of('.');
    const std::string ext = dot == std::string::npos ? "" : to_lower(path.substr(dot + 1));
    if (ext == "ply") return load_ply(path);
    return load_csv(path);
}

void save_point_cloud(const SurfacePointCloud& cloud, const std::string& path) {
    std::FILE* f = std::fopen(path.c_str(), "w");
    if (!f) throw ConfigError("cannot write " + path);
    bool any_label = false;
    for (auto l : cloud.labels) any_label = any_label || l != PointLabel::interior;

    if (cloud.dim == 2)
        std::fprintf(f, "x,y,nx,ny%s\n", any_label ? ",label" : "");
    else
        std::fprintf(f, "x,y,z,nx,ny,nz%s\n", any_label ? ",label" : "");
    for (std::size_t p = 0; p < cloud.size(); ++p) {
        for (int i = 0; i < cloud.dim; ++i)
            std::fprintf(f, "%s%.17g", i ? "," : "", cloud.positions[p][i]);
        for (int i = 0; i < cloud.dim; ++i) std::fprintf(f, ",%.17g", cloud.normals[p][i]);
        if (any_label) std::fprintf(f, ",%s", label_name(cloud.labels[p]));
        std::fprintf(f, "\n");
    }
    std::fclose(f);
}

void save_records(const std::vector<ConvergenceRecord>& records, const std::string& path) {
    std::FILE* f = std::fopen(path.c_str(), "w");
    if (!f) throw ConfigError("cannot write " + path);
    std::fprintf(f, "experiment,N_p,h,order_r,rc_factor,dn,N_n,eps_factor,L2,Linf,wall_time_s\n");
    for (const auto& r : records)
        std::fprintf(f, "%s,%zu,%.17g,%d,%.17g,%.17g,%d,%.17g,%.17g,%.17g,%.6f\n",
                     r.experiment.c_str(), r.n_points, r.h, r.order_r, r.rc_factor, r.dn, r.nn,
                     r.eps_factor, r.l2, r.linf, r.wall_time_s);
    std::fclose(f);
}

void save_time_series(const std::vector<double>& times, const std::vector<double>& f_x0,
                      const std::vector<double>& f_x1, double alpha, const std::string& path) {
    std::FILE* f = std::fopen(path.c_str(), "w");
    if (!f) throw ConfigError("cannot write " + path);
    std::fprintf(f, "t,f_at_x0,f_at_x1,alpha\n");
    for (std::size_t i = 0; i < times.size(); ++i)
        std::fprintf(f, "%.6f,%.17g,%.17g,%.17g\n", times[i], f_x0[i], f_x1[i], alpha);
    std::fclose(f);
}

void save_point_scalars(const SurfacePointCloud& cloud,
                        const std::vector<std::string>& column_names,
                        const std::vector<std::vector<double>>& columns, const std::string& path) {
    std::FILE* f = std::fopen(path.c_str(), "w");
    if (!f) throw ConfigError("cannot write " + path);
    std::fprintf(f, cloud.dim == 2 ? "x,y" : "x,y,z");
    for (const auto& name : column_names) std::fprintf(f, ",%s", name.c_str());
    std::fprintf(f, "\n");
    for (std::size_t p = 0; p < cloud.size(); ++p) {
        for (int i = 0; i < cloud.dim; ++i)
            std::fprintf(f, "%s%.17g", i ? "," : "", cloud.positions[p][i]);
        for (const auto& col : columns) std::fprintf(f, ",%.17g", col[p]);
        std::fprintf(f, "\n");
    }
    std::fclose(f);
}

void dump_kernels(const std::vector<KernelCoefficients>& kernels, const std::string& path) {
    std::FILE* f = std::fopen(path.c_str(), "w");
    if (!f) throw ConfigError("cannot write " + path);
    std::fprintf(f, "point,basis,coefficient,epsilon\n");
    for (std::size_t p = 0; p < kernels.size(); ++p)
        for (std::size_t g = 0; g < kernels[p].basis.size(); ++g)
            std::fprintf(f, "%zu,\"%s\",%.17g,%.17g\n", p, kernels[p].basis[g].to_string().c_str(),
                         kernels[p].coeffs[g], kernels[p].epsilon);
    std::fclose(f);
}

}  // namespace sdcpse::bench
