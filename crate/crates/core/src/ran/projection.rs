use super::{FaceId, Ran, RanError, VertexPath};

/// Projection of a path onto a prefix, with the face counts around it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectionCheck {
    /// Vertices of the projected path (`tau`).
    pub tau: usize,
    /// Distinct prefix faces whose interior the path visits (`tau'`).
    pub tau_prime: usize,
    /// Maximal runs of the path strictly inside prefix faces.
    pub interior_runs: usize,
}

impl ProjectionCheck {
    pub fn lower_ok(&self) -> bool {
        self.tau_prime + 1 >= self.tau
    }

    pub fn upper_ok(&self) -> bool {
        self.tau_prime <= self.tau + 1
    }

    /// `tau - 1 <= tau' <= tau + 1`.
    pub fn holds(&self) -> bool {
        self.lower_ok() && self.upper_ok()
    }

    /// Runs are separated by projected vertices. A run enters and leaves its
    /// face through corners, and each corner borders at most two runs, so a
    /// face holds at most three runs, four if both path ends lie inside it:
    /// `tau' <= runs <= min(3 tau' + 1, tau + 1)`.
    pub fn run_bound_holds(&self) -> bool {
        self.tau_prime <= self.interior_runs
            && self.interior_runs <= 3 * self.tau_prime + 1
            && self.interior_runs <= self.tau + 1
    }
}

impl Ran {
    fn check_sigma(&self, sigma: usize) -> Result<(), RanError> {
        if sigma > self.n() {
            return Err(RanError::SigmaOutOfRange { sigma, n: self.n() });
        }
        Ok(())
    }

    /// Drop every path vertex inserted after step `sigma`.
    pub fn project_path(&self, sigma: usize, path: &VertexPath) -> Result<VertexPath, RanError> {
        self.check_sigma(sigma)?;
        path.check_in(self)?;
        let bound = (sigma + 3) as u32;
        let projected: Vec<u32> = path.0.iter().copied().filter(|&v| v < bound).collect();
        // Consecutive survivors are separated only by vertices inside one
        // prefix face, and both lie on that face's boundary.
        assert!(
            projected.windows(2).all(|w| self.has_edge(w[0], w[1])),
            "projection left two non-adjacent vertices consecutive"
        );
        Ok(VertexPath(projected))
    }

    /// Distinct leaf faces of the `sigma`-prefix whose interior holds a path
    /// vertex, ascending.
    pub fn visited_face_set(&self, sigma: usize, path: &VertexPath) -> Result<Vec<FaceId>, RanError> {
        self.check_sigma(sigma)?;
        path.check_in(self)?;
        let mut faces: Vec<FaceId> = path
            .0
            .iter()
            .filter_map(|&v| self.containing_face(v, sigma))
            .collect();
        faces.sort_unstable();
        faces.dedup();
        Ok(faces)
    }

    pub fn visited_faces(&self, sigma: usize, path: &VertexPath) -> Result<usize, RanError> {
        Ok(self.visited_face_set(sigma, path)?.len())
    }

    pub fn projection_check(&self, sigma: usize, path: &VertexPath) -> Result<ProjectionCheck, RanError> {
        let tau = self.project_path(sigma, path)?.0.len();
        let tau_prime = self.visited_faces(sigma, path)?;
        let bound = (sigma + 3) as u32;
        let mut interior_runs = 0;
        let mut inside = false;
        for &v in &path.0 {
            let now = v >= bound;
            if now && !inside {
                interior_runs += 1;
            }
            inside = now;
        }
        Ok(ProjectionCheck {
            tau,
            tau_prime,
            interior_runs,
        })
    }
}
