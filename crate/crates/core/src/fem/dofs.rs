use crate::params::Element;

use super::mesh::QuadMesh;

/// What a global DOF is attached to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DofKind {
    Node,
    /// Edge parallel to the x-axis.
    HorizontalEdge,
    /// Edge parallel to the y-axis.
    VerticalEdge,
}

/// Global numbering of the DOFs of one element type on a mesh.
///
/// Nodes are numbered row by row. Edges are numbered row by row as well,
/// interleaving the horizontal edges of grid line `j` with the vertical
/// edges of element row `j`, which keeps the matrix bandwidth near `2n`.
#[derive(Debug, Clone)]
pub struct DofMap {
    element: Element,
    mesh: QuadMesh,
    local: Vec<[usize; 4]>,
    boundary: Vec<bool>,
    kinds: Vec<DofKind>,
    positions: Vec<(f64, f64)>,
    grid: Vec<[i64; 2]>,
}

impl DofMap {
    pub fn new(mesh: &QuadMesh, element: Element) -> Self {
        let n = mesh.n();
        let h = mesh.h();
        let mut local = Vec::with_capacity(n * n);
        let (mut boundary, mut kinds, mut positions, mut grid);
        match element {
            Element::P1C => {
                let node = |i: usize, j: usize| j * (n + 1) + i;
                for j in 0..n {
                    for i in 0..n {
                        local.push([node(i, j), node(i + 1, j), node(i + 1, j + 1), node(i, j + 1)]);
                    }
                }
                let count = (n + 1) * (n + 1);
                boundary = Vec::with_capacity(count);
                positions = Vec::with_capacity(count);
                grid = Vec::with_capacity(count);
                for j in 0..=n {
                    for i in 0..=n {
                        boundary.push(i == 0 || j == 0 || i == n || j == n);
                        positions.push(mesh.node(i, j));
                        grid.push([2 * i as i64, 2 * j as i64]);
                    }
                }
                kinds = vec![DofKind::Node; count];
            }
            Element::RT1NC | Element::RT2NC => {
                let row = 2 * n + 1;
                let hz = |i: usize, j: usize| j * row + i;
                let vt = |i: usize, j: usize| j * row + n + i;
                for j in 0..n {
                    for i in 0..n {
                        local.push([vt(i + 1, j), vt(i, j), hz(i, j + 1), hz(i, j)]);
                    }
                }
                let count = 2 * n * (n + 1);
                boundary = Vec::with_capacity(count);
                kinds = Vec::with_capacity(count);
                positions = Vec::with_capacity(count);
                grid = Vec::with_capacity(count);
                for j in 0..=n {
                    for i in 0..n {
                        boundary.push(j == 0 || j == n);
                        kinds.push(DofKind::HorizontalEdge);
                        let (x, y) = mesh.node(i, j);
                        positions.push((x + 0.5 * h, y));
                        grid.push([2 * i as i64 + 1, 2 * j as i64]);
                    }
                    if j == n {
                        break;
                    }
                    for i in 0..=n {
                        boundary.push(i == 0 || i == n);
                        kinds.push(DofKind::VerticalEdge);
                        let (x, y) = mesh.node(i, j);
                        positions.push((x, y + 0.5 * h));
                        grid.push([2 * i as i64, 2 * j as i64 + 1]);
                    }
                }
            }
        }
        Self {
            element,
            mesh: *mesh,
            local,
            boundary,
            kinds,
            positions,
            grid,
        }
    }

    pub fn element(&self) -> Element {
        self.element
    }

    pub fn mesh(&self) -> &QuadMesh {
        &self.mesh
    }

    pub fn len(&self) -> usize {
        self.boundary.len()
    }

    pub fn is_empty(&self) -> bool {
        self.boundary.is_empty()
    }

    /// Global DOFs of element `(i, j)` in local order.
    pub fn element_dofs(&self, i: usize, j: usize) -> [usize; 4] {
        self.local[j * self.mesh.n() + i]
    }

    pub fn is_boundary(&self, dof: usize) -> bool {
        self.boundary[dof]
    }

    pub fn kind(&self, dof: usize) -> DofKind {
        self.kinds[dof]
    }

    /// Node or edge midpoint the DOF is attached to.
    pub fn position(&self, dof: usize) -> (f64, f64) {
        self.positions[dof]
    }

    /// Position on the half-spacing integer grid, used for ordering.
    pub fn grid_coords(&self) -> &[[i64; 2]] {
        &self.grid
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_and_sharing() {
        let m = QuadMesh::unit_square(3).unwrap();
        let q = DofMap::new(&m, Element::P1C);
        assert_eq!(q.len(), 16);
        assert_eq!(q.element_dofs(0, 0), [0, 1, 5, 4]);
        assert_eq!(q.boundary.iter().filter(|b| **b).count(), 12);

        let r = DofMap::new(&m, Element::RT1NC);
        assert_eq!(r.len(), 24);
        assert_eq!(r.boundary.iter().filter(|b| **b).count(), 12);
        // Right edge of (0,0) is the left edge of (1,0).
        assert_eq!(r.element_dofs(0, 0)[0], r.element_dofs(1, 0)[1]);
        // Top edge of (0,0) is the bottom edge of (0,1).
        assert_eq!(r.element_dofs(0, 0)[2], r.element_dofs(0, 1)[3]);
        // Every index used exactly as often as elements touching it.
        let mut hits = vec![0; r.len()];
        for j in 0..3 {
            for i in 0..3 {
                for d in r.element_dofs(i, j) {
                    hits[d] += 1;
                }
            }
        }
        for d in 0..r.len() {
            assert_eq!(hits[d], if r.is_boundary(d) { 1 } else { 2 });
        }
    }

    #[test]
    fn positions_match_grid() {
        let m = QuadMesh::unit_square(4).unwrap();
        for e in [Element::P1C, Element::RT2NC] {
            let d = DofMap::new(&m, e);
            for k in 0..d.len() {
                let (x, y) = d.position(k);
                let [gx, gy] = d.grid_coords()[k];
                assert!((x - gx as f64 * m.h() / 2.0).abs() < 1e-15);
                assert!((y - gy as f64 * m.h() / 2.0).abs() < 1e-15);
            }
        }
    }
}
