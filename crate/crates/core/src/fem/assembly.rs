use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linsolve::CsrMatrix;
use crate::params::{Element, FlowParams, Formulation, SchemeId};

use super::basis::{reference_basis, ShapeSet};
use super::dofs::DofMap;
use super::element::ElementMatrices;
use super::mesh::QuadMesh;
use super::quadrature::gauss_legendre;
use super::wave::PlaneWave;

/// The four real operators making up the system, on one shared pattern.
#[derive(Debug, Clone)]
pub struct OperatorBlocks {
    /// `(A∇p, ∇v)`
    pub stiffness: CsrMatrix,
    /// `(∂x p, v)`
    pub convection: CsrMatrix,
    /// `(p, v)`
    pub mass: CsrMatrix,
    /// `⟨p, v⟩` on the outer boundary
    pub boundary: CsrMatrix,
}

impl OperatorBlocks {
    pub fn system_matrix(&self, omega: f64, flow: FlowParams) -> Result<CsrMatrix> {
        let one = Complex64::new(1.0, 0.0);
        CsrMatrix::combine(&[
            (&self.stiffness, one),
            (&self.convection, Complex64::new(0.0, -2.0 * omega * flow.mach())),
            (&self.mass, Complex64::new(-omega * omega, 0.0)),
            (&self.boundary, Complex64::new(0.0, -omega)),
        ])
    }
}

#[derive(Debug, Clone)]
pub struct AssembledSystem {
    pub matrix: CsrMatrix,
    pub rhs: Vec<Complex64>,
    pub omega: f64,
    pub flow: FlowParams,
    pub scheme: SchemeId,
    pub dofs: DofMap,
    pub blocks: OperatorBlocks,
}

/// Quadrature on one boundary side: `(reference t, weight)` with weights
/// summing to the physical side length.
///
/// The midpoint rule is used only where midpoint values are the DOFs;
/// mean-value shape functions differ from their edge mean at the midpoint,
/// which would leave an O(h^{1/2}) consistency error on the boundary.
fn side_rule(element: Element, h: f64) -> Vec<(f64, f64)> {
    match element {
        Element::P1C | Element::RT2NC => {
            let (t, w) = gauss_legendre(2);
            t.into_iter().zip(w).map(|(t, w)| (t, 0.5 * h * w)).collect()
        }
        _ => vec![(0.0, h)],
    }
}

/// Builds the real operator blocks for an element type on a mesh.
pub fn assemble_blocks(mesh: &QuadMesh, element: Element, flow: FlowParams) -> (DofMap, OperatorBlocks) {
    let dofs = DofMap::new(mesh, element);
    let shapes = reference_basis(element);
    let em = ElementMatrices::compute(&shapes, mesh.h(), 3);
    let k = em.stiffness(flow.a11());
    let n = mesh.n();
    let zero = Complex64::new(0.0, 0.0);
    let re = |v: f64| Complex64::new(v, 0.0);

    let sides = mesh.boundary_sides();
    let cap = 16 * n * n + 16 * sides.len();
    let mut tk = Vec::with_capacity(cap);
    let mut td = Vec::with_capacity(cap);
    let mut tm = Vec::with_capacity(cap);
    let mut tb = Vec::with_capacity(cap);
    for j in 0..n {
        for i in 0..n {
            let g = dofs.element_dofs(i, j);
            for a in 0..4 {
                for b in 0..4 {
                    tk.push((g[a], g[b], re(k[a][b])));
                    td.push((g[a], g[b], re(em.convection[a][b])));
                    tm.push((g[a], g[b], re(em.mass[a][b])));
                    tb.push((g[a], g[b], zero));
                }
            }
        }
    }
    let rule = side_rule(element, mesh.h());
    for &(i, j, side) in &sides {
        let g = dofs.element_dofs(i, j);
        let mut local = [[0.0; 4]; 4];
        for &(t, w) in &rule {
            let (xi, eta) = side.reference_point(t);
            let v = shapes.values(xi, eta);
            for a in 0..4 {
                for b in 0..4 {
                    local[a][b] += w * (v[a] * v[b]);
                }
            }
        }
        for a in 0..4 {
            for b in 0..4 {
                tk.push((g[a], g[b], zero));
                td.push((g[a], g[b], zero));
                tm.push((g[a], g[b], zero));
                tb.push((g[a], g[b], re(local[a][b])));
            }
        }
    }
    let size = dofs.len();
    let build = |t: &[(usize, usize, Complex64)]| CsrMatrix::from_triplets(size, t).expect("indices come from the DOF map");
    let blocks = OperatorBlocks {
        stiffness: build(&tk),
        convection: build(&td),
        mass: build(&tm),
        boundary: build(&tb),
    };
    (dofs, blocks)
}

/// Impedance right-hand side `⟨g, v⟩` for a plane wave.
pub fn boundary_load(dofs: &DofMap, shapes: &ShapeSet, wave: &PlaneWave, flow: FlowParams) -> Vec<Complex64> {
    let mesh = dofs.mesh();
    let rule = side_rule(dofs.element(), mesh.h());
    let mut rhs = vec![Complex64::new(0.0, 0.0); dofs.len()];
    for (i, j, side) in mesh.boundary_sides() {
        let g = dofs.element_dofs(i, j);
        for &(t, w) in &rule {
            let (xi, eta) = side.reference_point(t);
            let (x, y) = mesh.to_physical(i, j, xi, eta);
            let data = wave.boundary_data(flow, side.outward_normal(), x, y) * w;
            let v = shapes.values(xi, eta);
            for a in 0..4 {
                rhs[g[a]] += data * v[a];
            }
        }
    }
    rhs
}

/// Assembles the convected problem with plane-wave impedance data.
pub fn assemble(
    mesh: &QuadMesh,
    scheme: SchemeId,
    flow: FlowParams,
    omega: f64,
    wave: &PlaneWave,
) -> Result<AssembledSystem> {
    if scheme.formulation != Formulation::Convected {
        return Err(Error::InvalidParameter {
            name: "formulation",
            reason: "only the convected problem has boundary conditions to assemble".into(),
        });
    }
    if !(omega > 0.0) || !omega.is_finite() {
        return Err(Error::InvalidParameter {
            name: "omega",
            reason: format!("must be positive and finite, got {omega}"),
        });
    }
    let (dofs, blocks) = assemble_blocks(mesh, scheme.element, flow);
    let matrix = blocks.system_matrix(omega, flow)?;
    let rhs = boundary_load(&dofs, &reference_basis(scheme.element), wave, flow);
    Ok(AssembledSystem {
        matrix,
        rhs,
        omega,
        flow,
        scheme,
        dofs,
        blocks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn flow(m: f64) -> FlowParams {
        FlowParams::new(m).unwrap()
    }

    #[test]
    fn rejects_bad_input() {
        let mesh = QuadMesh::unit_square(2).unwrap();
        let f = flow(0.3);
        let w = PlaneWave::new(1.0, 0.0, f).unwrap();
        assert!(assemble(&mesh, SchemeId::convected(Element::P1C), f, 0.0, &w).is_err());
        assert!(assemble(&mesh, SchemeId::helmholtz(Element::P1C), f, 1.0, &w).is_err());
    }

    #[test]
    fn block_structure() {
        let mesh = QuadMesh::unit_square(3).unwrap();
        for e in Element::ALL {
            let (_, b) = assemble_blocks(&mesh, e, flow(0.4));
            let n = b.mass.dim();
            let mut row_sum = 0.0;
            for i in 0..n {
                for (j, v) in b.mass.row(i) {
                    assert_eq!(v, b.mass.get(j, i));
                    assert_eq!(b.stiffness.get(i, j), b.stiffness.get(j, i));
                    row_sum += v.re;
                }
                // Constants are in the kernel of the stiffness operator.
                let s: f64 = b.stiffness.row(i).map(|(_, v)| v.re).sum();
                assert!(s.abs() < 1e-13);
            }
            assert!((row_sum - 1.0).abs() < 1e-13, "total mass = area");
            let perim: f64 = (0..n).flat_map(|i| b.boundary.row(i).map(|(_, v)| v.re)).sum();
            assert!((perim - 4.0).abs() < 1e-13);
        }
    }

    #[test]
    fn rt1_interior_pattern() {
        // Centre patch of a 2×2 mesh with h = 1: the test function summing
        // the four inner edges sees weight 10/24 on inner and 1/24 on outer DOFs.
        let mesh = build_patch();
        let (dofs, b) = assemble_blocks(&mesh, Element::RT1NC, flow(0.0));
        let inner: Vec<usize> = (0..dofs.len()).filter(|&d| !dofs.is_boundary(d)).collect();
        assert_eq!(inner.len(), 4);
        for d in 0..dofs.len() {
            let w: f64 = inner.iter().map(|&i| b.mass.get(i, d).re).sum();
            let want = if dofs.is_boundary(d) { 1.0 / 24.0 } else { 10.0 / 24.0 };
            assert!((w - want).abs() < 1e-14, "dof {d}: {w}");
        }
    }

    fn build_patch() -> QuadMesh {
        crate::fem::mesh::build_mesh([-1.0, -1.0, 1.0, 1.0], 2).unwrap()
    }
}
