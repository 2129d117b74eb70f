#ifndef BUBBLESIM_GRID_H
#define BUBBLESIM_GRID_H

#include <cassert>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace bubblesim {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 v) { return {s * v.x, s * v.y}; }

// Cell-centered scalar field, row-major, (nx, ny) cells.
template <class T>
class CellField {
public:
    CellField() = default;
    CellField(int nx, int ny, T value = T())
        : nx_(nx), ny_(ny), data_(static_cast<size_t>(nx) * ny, value) {}

    int nx() const { return nx_; }
    int ny() const { return ny_; }
    int count() const { return nx_ * ny_; }

    T& operator()(int i, int j)
    {
        assert(i >= 0 && i < nx_ && j >= 0 && j < ny_);
        return data_[static_cast<size_t>(j) * nx_ + i];
    }
    const T& operator()(int i, int j) const
    {
        assert(i >= 0 && i < nx_ && j >= 0 && j < ny_);
        return data_[static_cast<size_t>(j) * nx_ + i];
    }
    T& operator[](int flat) { return data_[static_cast<size_t>(flat)]; }
    const T& operator[](int flat) const { return data_[static_cast<size_t>(flat)]; }

    int flatten(int i, int j) const { return j * nx_ + i; }

    void fill(T value) { data_.assign(data_.size(), value); }

    std::vector<T>& data() { return data_; }
    const std::vector<T>& data() const { return data_; }

private:
    int nx_ = 0;
    int ny_ = 0;
    std::vector<T> data_;
};

// Face-normal scalars on a MAC grid. Axis 0 faces (x-normal) form an
// (nx+1) x ny array, axis 1 faces (y-normal) an nx x (ny+1) array, stored
// back to back so a face also has a single flat index.
class FaceField {
public:
    FaceField() = default;
    FaceField(int nx, int ny, double value = 0.0)
        : nx_(nx), ny_(ny),
          u_count_((nx + 1) * ny), v_count_(nx * (ny + 1)),
          data_(static_cast<size_t>(u_count_ + v_count_), value) {}

    int nx() const { return nx_; }
    int ny() const { return ny_; }
    int u_count() const { return u_count_; }
    int v_count() const { return v_count_; }
    int count() const { return u_count_ + v_count_; }

    double& u(int i, int j)
    {
        assert(i >= 0 && i <= nx_ && j >= 0 && j < ny_);
        return data_[static_cast<size_t>(j) * (nx_ + 1) + i];
    }
    double u(int i, int j) const
    {
        assert(i >= 0 && i <= nx_ && j >= 0 && j < ny_);
        return data_[static_cast<size_t>(j) * (nx_ + 1) + i];
    }
    double& v(int i, int j)
    {
        assert(i >= 0 && i <= nx_ && j >= 0 && j <= ny_);
        return data_[static_cast<size_t>(u_count_) + static_cast<size_t>(j) * nx_ + i];
    }
    double v(int i, int j) const
    {
        assert(i >= 0 && i <= nx_ && j >= 0 && j <= ny_);
        return data_[static_cast<size_t>(u_count_) + static_cast<size_t>(j) * nx_ + i];
    }

    double& flat(int f) { return data_[static_cast<size_t>(f)]; }
    double flat(int f) const { return data_[static_cast<size_t>(f)]; }

    int u_index(int i, int j) const { return j * (nx_ + 1) + i; }
    int v_index(int i, int j) const { return u_count_ + j * nx_ + i; }

    void fill(double value) { data_.assign(data_.size(), value); }

    std::vector<double>& data() { return data_; }
    const std::vector<double>& data() const { return data_; }

private:
    int nx_ = 0;
    int ny_ = 0;
    int u_count_ = 0;
    int v_count_ = 0;
    std::vector<double> data_;
};

// Byte-sized mask over the same face layout.
class FaceMask {
public:
    FaceMask() = default;
    FaceMask(int nx, int ny, uint8_t value = 0)
        : nx_(nx), ny_(ny),
          u_count_((nx + 1) * ny),
          data_(static_cast<size_t>(u_count_ + nx * (ny + 1)), value) {}

    uint8_t& u(int i, int j) { return data_[static_cast<size_t>(j) * (nx_ + 1) + i]; }
    uint8_t u(int i, int j) const { return data_[static_cast<size_t>(j) * (nx_ + 1) + i]; }
    uint8_t& v(int i, int j) { return data_[static_cast<size_t>(u_count_) + static_cast<size_t>(j) * nx_ + i]; }
    uint8_t v(int i, int j) const { return data_[static_cast<size_t>(u_count_) + static_cast<size_t>(j) * nx_ + i]; }
    uint8_t& flat(int f) { return data_[static_cast<size_t>(f)]; }
    uint8_t flat(int f) const { return data_[static_cast<size_t>(f)]; }
    int count() const { return static_cast<int>(data_.size()); }
    void fill(uint8_t value) { data_.assign(data_.size(), value); }

private:
    int nx_ = 0;
    int ny_ = 0;
    int u_count_ = 0;
    std::vector<uint8_t> data_;
};

// Uniform square-cell MAC grid. Cell (i, j) spans
// [origin + (i, j) * dx, origin + (i + 1, j + 1) * dx).
struct StaggeredGrid {
    int nx = 0;
    int ny = 0;
    double dx = 0.0;
    Vec2 origin;

    StaggeredGrid() = default;
    StaggeredGrid(int nx_, int ny_, double dx_, Vec2 origin_ = {})
        : nx(nx_), ny(ny_), dx(dx_), origin(origin_)
    {
        if (nx < 3 || ny < 3) throw std::invalid_argument("grid: nx, ny must be >= 3");
        if (dx <= 0.0) throw std::invalid_argument("grid: dx must be positive");
    }

    int cell_count() const { return nx * ny; }

    Vec2 cell_center(int i, int j) const
    {
        return {origin.x + (i + 0.5) * dx, origin.y + (j + 0.5) * dx};
    }
    Vec2 node(int i, int j) const
    {
        return {origin.x + i * dx, origin.y + j * dx};
    }
    // Position of the u-face (i, j): left edge midpoint of cell (i, j).
    Vec2 u_face_center(int i, int j) const
    {
        return {origin.x + i * dx, origin.y + (j + 0.5) * dx};
    }
    Vec2 v_face_center(int i, int j) const
    {
        return {origin.x + (i + 0.5) * dx, origin.y + j * dx};
    }

    double width() const { return nx * dx; }
    double height() const { return ny * dx; }
    Vec2 max_corner() const { return {origin.x + width(), origin.y + height()}; }

    bool contains(Vec2 p) const
    {
        Vec2 hi = max_corner();
        return p.x >= origin.x && p.x <= hi.x && p.y >= origin.y && p.y <= hi.y;
    }
};

} // namespace bubblesim

#endif
