#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "splitaffine/bjorling.hpp"

namespace splitaffine {

enum class CellFlag { Ok, Singular, Invalid };

const char* flag_name(CellFlag f);

struct GridCell {
    double s = 0.0;
    double t = 0.0;
    Vec3R psi;
    Vec3R N;
    double rho = 0.0;
    CellFlag flag = CellFlag::Ok;
};

/// Row-major samples: index = j * ns + i for s_i, t_j.
struct SurfaceGrid {
    int ns = 0;
    int nt = 0;
    std::vector<GridCell> cells;

    const GridCell& at(int i, int j) const { return cells[static_cast<std::size_t>(j) * ns + i]; }
    GridCell& at(int i, int j) { return cells[static_cast<std::size_t>(j) * ns + i]; }
};

/// Evaluates every cell (threads > 1 fans out by rows).  Cells that throw a
/// DomainError or QuadratureFailure are marked Invalid.  A valid cell is
/// Singular when |rho| <= rho_tol or rho changes sign towards a valid
/// 4-neighbour of larger |rho|.
SurfaceGrid sample_surface(const AffineSurface& surface, const Window& window, int ns, int nt, int threads = 1,
                           double rho_tol = 1e-10);

/// Marks singular cells from rho alone; exposed for grids built elsewhere.
void flag_singular(SurfaceGrid& grid, double rho_tol = 1e-10);

/// ASCII OBJ: one vertex per cell in grid order (invalid cells as 0 0 0),
/// two triangles per quad, faces touching a flagged cell omitted.
void write_obj(std::ostream& os, const SurfaceGrid& grid);

/// Header s,t,x,y,z,nx,ny,nz,rho,flag; %.17g numbers.
void write_csv(std::ostream& os, const SurfaceGrid& grid);
/// Inverse of write_csv; the grid shape is recovered from the s and t
/// columns.  Throws Error on malformed input.
SurfaceGrid read_csv(std::istream& is);

std::string format_double(double v);

}  // namespace splitaffine
