#include "splitaffine/mesh.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>
#include <thread>

namespace splitaffine {

const char* flag_name(CellFlag f) {
    switch (f) {
        case CellFlag::Ok: return "ok";
        case CellFlag::Singular: return "singular";
        case CellFlag::Invalid: return "invalid";
    }
    return "?";
}

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void flag_singular(SurfaceGrid& grid, double rho_tol) {
    std::vector<CellFlag> flags(grid.cells.size());
    for (int j = 0; j < grid.nt; ++j) {
        for (int i = 0; i < grid.ns; ++i) {
            const GridCell& c = grid.at(i, j);
            CellFlag f = c.flag == CellFlag::Invalid ? CellFlag::Invalid : CellFlag::Ok;
            if (f == CellFlag::Ok) {
                if (std::abs(c.rho) <= rho_tol) f = CellFlag::Singular;
                const int di[] = {1, -1, 0, 0}, dj[] = {0, 0, 1, -1};
                for (int k = 0; k < 4 && f == CellFlag::Ok; ++k) {
                    const int ii = i + di[k], jj = j + dj[k];
                    if (ii < 0 || jj < 0 || ii >= grid.ns || jj >= grid.nt) continue;
                    const GridCell& n = grid.at(ii, jj);
                    if (n.flag == CellFlag::Invalid) continue;
                    if ((c.rho < 0) != (n.rho < 0) && std::abs(c.rho) <= std::abs(n.rho)) f = CellFlag::Singular;
                }
            }
            flags[static_cast<std::size_t>(j) * grid.ns + i] = f;
        }
    }
    for (std::size_t k = 0; k < flags.size(); ++k) grid.cells[k].flag = flags[k];
}

SurfaceGrid sample_surface(const AffineSurface& surface, const Window& window, int ns, int nt, int threads,
                           double rho_tol) {
    const auto ss = window.s.samples(ns);
    const auto ts = window.t.samples(nt);
    SurfaceGrid grid;
    grid.ns = static_cast<int>(ss.size());
    grid.nt = static_cast<int>(ts.size());
    grid.cells.resize(ss.size() * ts.size());

    auto row = [&](int j) {
        for (int i = 0; i < grid.ns; ++i) {
            GridCell& c = grid.at(i, j);
            c.s = ss[i];
            c.t = ts[j];
            try {
                const SurfacePoint p = surface.evaluate(c.s, c.t);
                c.psi = p.psi;
                c.N = p.N;
                c.rho = p.rho;
                if (!std::isfinite(c.rho) || !std::isfinite(max_abs(c.psi))) throw DomainError("non-finite value");
            } catch (const DomainError&) {
                c = GridCell{ss[i], ts[j], {}, {}, 0.0, CellFlag::Invalid};
            } catch (const QuadratureFailure&) {
                c = GridCell{ss[i], ts[j], {}, {}, 0.0, CellFlag::Invalid};
            }
        }
    };
    threads = std::max(1, std::min(threads, grid.nt));
    if (threads == 1) {
        for (int j = 0; j < grid.nt; ++j) row(j);
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < threads; ++w)
            pool.emplace_back([&, w] {
                for (int j = w; j < grid.nt; j += threads) row(j);
            });
        for (auto& th : pool) th.join();
    }
    flag_singular(grid, rho_tol);
    return grid;
}

void write_obj(std::ostream& os, const SurfaceGrid& grid) {
    os << "# " << grid.ns << " x " << grid.nt << " grid\n";
    for (const auto& c : grid.cells) {
        if (c.flag == CellFlag::Invalid) {
            os << "v 0 0 0 # invalid\n";
            continue;
        }
        os << "v " << format_double(c.psi.x) << ' ' << format_double(c.psi.y) << ' ' << format_double(c.psi.z) << '\n';
    }
    auto id = [&](int i, int j) { return static_cast<long>(j) * grid.ns + i + 1; };
    for (int j = 0; j + 1 < grid.nt; ++j) {
        for (int i = 0; i + 1 < grid.ns; ++i) {
            if (grid.at(i, j).flag != CellFlag::Ok || grid.at(i + 1, j).flag != CellFlag::Ok ||
                grid.at(i, j + 1).flag != CellFlag::Ok || grid.at(i + 1, j + 1).flag != CellFlag::Ok)
                continue;
            os << "f " << id(i, j) << ' ' << id(i + 1, j) << ' ' << id(i + 1, j + 1) << '\n';
            os << "f " << id(i, j) << ' ' << id(i + 1, j + 1) << ' ' << id(i, j + 1) << '\n';
        }
    }
}

void write_csv(std::ostream& os, const SurfaceGrid& grid) {
    os << "s,t,x,y,z,nx,ny,nz,rho,flag\n";
    for (const auto& c : grid.cells) {
        os << format_double(c.s) << ',' << format_double(c.t) << ',' << format_double(c.psi.x) << ','
           << format_double(c.psi.y) << ',' << format_double(c.psi.z) << ',' << format_double(c.N.x) << ','
           << format_double(c.N.y) << ',' << format_double(c.N.z) << ',' << format_double(c.rho) << ','
           << flag_name(c.flag) << '\n';
    }
}

SurfaceGrid read_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || line != "s,t,x,y,z,nx,ny,nz,rho,flag") throw Error("bad CSV header");
    SurfaceGrid grid;
    int line_no = 1;
    while (std::getline(is, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string field;
        double v[9];
        for (double& x : v) {
            if (!std::getline(ss, field, ',')) throw Error("short CSV row at line " + std::to_string(line_no));
            char* end = nullptr;
            x = std::strtod(field.c_str(), &end);
            if (end == field.c_str() || *end != '\0') throw Error("bad number at line " + std::to_string(line_no));
        }
        std::getline(ss, field);
        GridCell c{v[0], v[1], {v[2], v[3], v[4]}, {v[5], v[6], v[7]}, v[8], CellFlag::Ok};
        if (field == "singular")
            c.flag = CellFlag::Singular;
        else if (field == "invalid")
            c.flag = CellFlag::Invalid;
        else if (field != "ok")
            throw Error("bad flag at line " + std::to_string(line_no));
        grid.cells.push_back(c);
    }
    if (grid.cells.empty()) throw Error("empty CSV");
    int ns = 1;
    while (ns < static_cast<int>(grid.cells.size()) && grid.cells[ns].t == grid.cells[0].t) ++ns;
    if (grid.cells.size() % ns != 0) throw Error("CSV is not a rectangular grid");
    grid.ns = ns;
    grid.nt = static_cast<int>(grid.cells.size() / ns);
    return grid;
}

}  // namespace splitaffine
