//! Traveling salesman problem with time windows.
//!
//! Tours start and end at depot 0. Arriving at a city before its ready time
//! waits at no cost; arriving after its due time counts one violated
//! constraint and the tour continues. A finished tour `p` is scored by
//!
//! ```text
//! Tcost(p) = -cost(p) - 10^6 * omega(p)
//! ```
//!
//! where `cost` is the travelled distance including the return leg and
//! `omega` the number of violations. The penalty constant is high enough
//! that any tour with fewer violations beats any tour with more, so the
//! search optimizes constraints first and distance second.
//!
//! The move ordering heuristic plays time-window-feasible cities first,
//! each group sorted by ascending due date, then travel time, then city id.
//! It is deliberately a small, swappable policy; published per-instance
//! scores depend on the (unspecified) heuristic used to produce them.

use std::sync::Arc;

use search_core::ProblemState;
use thiserror::Error;

/// Penalty weight per violated time window.
pub const VIOLATION_PENALTY: f64 = 1e6;

/// Tour score: `-distance - 10^6 * violations`.
pub fn tcost(distance: f64, violations: u32) -> f64 {
    -distance - VIOLATION_PENALTY * violations as f64
}

#[derive(Debug, Error)]
pub enum TsptwError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("line {line}: city {city} has due {due} < ready {ready}")]
    InvertedWindow { line: usize, city: usize, ready: f64, due: f64 },
    #[error("expected {expected} city lines, found {found}")]
    CityCount { expected: usize, found: usize },
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
}

/// An immutable TSPTW instance: travel times, time windows and service
/// times for `n` cities, city 0 being the depot.
#[derive(Debug, Clone)]
pub struct TsptwInstance {
    n: usize,
    travel: Vec<f64>,
    ready: Vec<f64>,
    due: Vec<f64>,
    service: Vec<f64>,
}

impl TsptwInstance {
    /// Build an instance from planar coordinates; travel times are the
    /// Euclidean distances.
    pub fn from_coordinates(
        coordinates: &[(f64, f64)],
        windows: &[(f64, f64)],
        service: &[f64],
    ) -> Result<Self, TsptwError> {
        let n = coordinates.len();
        if n == 0 {
            return Err(TsptwError::InvalidInstance("no cities".into()));
        }
        if windows.len() != n || service.len() != n {
            return Err(TsptwError::InvalidInstance(
                "coordinates, windows and service lists must have equal length".into(),
            ));
        }
        let mut travel = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                let dx = coordinates[i].0 - coordinates[j].0;
                let dy = coordinates[i].1 - coordinates[j].1;
                travel[i * n + j] = (dx * dx + dy * dy).sqrt();
            }
        }
        Self::from_parts(n, travel, windows, service)
    }

    /// Build an instance from an explicit travel-time matrix (row-major,
    /// `n * n`). The matrix must be symmetric and non-negative with a zero
    /// diagonal.
    pub fn from_matrix(
        travel: Vec<f64>,
        windows: &[(f64, f64)],
        service: &[f64],
    ) -> Result<Self, TsptwError> {
        let n = windows.len();
        if n == 0 {
            return Err(TsptwError::InvalidInstance("no cities".into()));
        }
        if travel.len() != n * n {
            return Err(TsptwError::InvalidInstance(format!(
                "travel matrix has {} entries, expected {}",
                travel.len(),
                n * n
            )));
        }
        for i in 0..n {
            if travel[i * n + i] != 0.0 {
                return Err(TsptwError::InvalidInstance(format!(
                    "travel matrix diagonal entry {i} is non-zero"
                )));
            }
            for j in 0..n {
                let t = travel[i * n + j];
                if !(t >= 0.0) {
                    return Err(TsptwError::InvalidInstance(format!(
                        "travel time {i}->{j} is negative or NaN"
                    )));
                }
                if travel[i * n + j] != travel[j * n + i] {
                    return Err(TsptwError::InvalidInstance(format!(
                        "travel matrix is not symmetric at ({i}, {j})"
                    )));
                }
            }
        }
        Self::from_parts(n, travel, windows, service)
    }

    fn from_parts(
        n: usize,
        travel: Vec<f64>,
        windows: &[(f64, f64)],
        service: &[f64],
    ) -> Result<Self, TsptwError> {
        for (city, &(ready, due)) in windows.iter().enumerate() {
            if due < ready {
                return Err(TsptwError::InvertedWindow { line: 0, city, ready, due });
            }
        }
        if service.iter().any(|&s| !(s >= 0.0)) {
            return Err(TsptwError::InvalidInstance("negative service time".into()));
        }
        Ok(TsptwInstance {
            n,
            travel,
            ready: windows.iter().map(|w| w.0).collect(),
            due: windows.iter().map(|w| w.1).collect(),
            service: service.to_vec(),
        })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn travel(&self, from: usize, to: usize) -> f64 {
        self.travel[from * self.n + to]
    }

    pub fn ready(&self, city: usize) -> f64 {
        self.ready[city]
    }

    pub fn due(&self, city: usize) -> f64 {
        self.due[city]
    }

    pub fn service(&self, city: usize) -> f64 {
        self.service[city]
    }
}

/// Parse the line-oriented instance format:
///
/// ```text
/// # comment
/// <n>
/// <id> <x> <y> <ready> <due> [service]
/// ...            (n lines, id 0 is the depot, ids in order)
/// ```
///
/// Blank lines and `#` comments are ignored. Travel times are Euclidean
/// distances between the coordinates. A missing service column defaults
/// to 0.
pub fn load_tsptw(text: &str) -> Result<TsptwInstance, TsptwError> {
    let mut n: Option<usize> = None;
    let mut coordinates: Vec<(f64, f64)> = Vec::new();
    let mut windows: Vec<(f64, f64)> = Vec::new();
    let mut service: Vec<f64> = Vec::new();

    for (index, raw) in text.lines().enumerate() {
        let line_no = index + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        match n {
            None => {
                n = Some(line.parse().map_err(|_| TsptwError::Parse {
                    line: line_no,
                    message: format!("expected city count, got {line:?}"),
                })?);
            }
            Some(expected) => {
                let fields: Vec<&str> = line.split_whitespace().collect();
                if fields.len() != 5 && fields.len() != 6 {
                    return Err(TsptwError::Parse {
                        line: line_no,
                        message: format!("expected `id x y ready due [service]`, got {} fields", fields.len()),
                    });
                }
                if coordinates.len() >= expected {
                    return Err(TsptwError::CityCount {
                        expected,
                        found: coordinates.len() + 1,
                    });
                }
                let parse = |field: &str, what: &str| -> Result<f64, TsptwError> {
                    field.parse().map_err(|_| TsptwError::Parse {
                        line: line_no,
                        message: format!("invalid {what}: {field:?}"),
                    })
                };
                let id: usize = fields[0].parse().map_err(|_| TsptwError::Parse {
                    line: line_no,
                    message: format!("invalid city id: {:?}", fields[0]),
                })?;
                if id != coordinates.len() {
                    return Err(TsptwError::Parse {
                        line: line_no,
                        message: format!("expected city id {}, got {id}", coordinates.len()),
                    });
                }
                let x = parse(fields[1], "x coordinate")?;
                let y = parse(fields[2], "y coordinate")?;
                let ready = parse(fields[3], "ready time")?;
                let due = parse(fields[4], "due time")?;
                if due < ready {
                    return Err(TsptwError::InvertedWindow { line: line_no, city: id, ready, due });
                }
                let svc = if fields.len() == 6 { parse(fields[5], "service time")? } else { 0.0 };
                coordinates.push((x, y));
                windows.push((ready, due));
                service.push(svc);
            }
        }
    }

    let expected = n.ok_or(TsptwError::Parse { line: 1, message: "missing city count".into() })?;
    if coordinates.len() != expected {
        return Err(TsptwError::CityCount { expected, found: coordinates.len() });
    }
    TsptwInstance::from_coordinates(&coordinates, &windows, &service)
}

/// A partial tour. Terminal once every city is visited; the return leg to
/// the depot is accounted when the last city is played, including its
/// violation check against the depot's due time.
#[derive(Clone, Debug)]
pub struct TsptwState {
    instance: Arc<TsptwInstance>,
    visited: Vec<u16>,
    visited_mask: Vec<bool>,
    current_time: f64,
    violations: u32,
    distance: f64,
}

impl TsptwState {
    pub fn new(instance: Arc<TsptwInstance>) -> Self {
        let n = instance.len();
        let mut visited_mask = vec![false; n];
        visited_mask[0] = true;
        let start = instance.ready(0);
        TsptwState {
            instance,
            visited: vec![0],
            visited_mask,
            current_time: start,
            violations: 0,
            distance: 0.0,
        }
    }

    pub fn instance(&self) -> &TsptwInstance {
        &self.instance
    }

    /// Visit order so far, starting at the depot.
    pub fn visited(&self) -> &[u16] {
        &self.visited
    }

    pub fn current_time(&self) -> f64 {
        self.current_time
    }

    pub fn violations(&self) -> u32 {
        self.violations
    }

    pub fn distance(&self) -> f64 {
        self.distance
    }

    /// Score of the tour so far (complete tours include the return leg).
    pub fn tcost(&self) -> f64 {
        tcost(self.distance, self.violations)
    }

    fn current_city(&self) -> usize {
        *self.visited.last().expect("tour always contains the depot") as usize
    }
}

impl ProblemState for TsptwState {
    type Move = u16;

    fn is_terminal(&self) -> bool {
        self.visited.len() == self.instance.len()
    }

    fn legal_moves(&self) -> Vec<u16> {
        let inst = &self.instance;
        let current = self.current_city();
        let mut keyed: Vec<(bool, f64, f64, u16)> = (1..inst.len())
            .filter(|&city| !self.visited_mask[city])
            .map(|city| {
                let travel = inst.travel(current, city);
                let arrival = (self.current_time + travel).max(inst.ready(city));
                let late = arrival > inst.due(city);
                (late, inst.due(city), travel, city as u16)
            })
            .collect();
        keyed.sort_by(|a, b| {
            a.0.cmp(&b.0)
                .then(a.1.total_cmp(&b.1))
                .then(a.2.total_cmp(&b.2))
                .then(a.3.cmp(&b.3))
        });
        keyed.into_iter().map(|(_, _, _, city)| city).collect()
    }

    fn play(&self, mv: &u16) -> Self {
        let city = *mv as usize;
        debug_assert!(!self.visited_mask[city], "city {city} already visited");
        let mut next = self.clone();
        let inst = &next.instance;
        let travel = inst.travel(next.current_city(), city);
        let arrival = (next.current_time + travel).max(inst.ready(city));
        if arrival > inst.due(city) {
            next.violations += 1;
        }
        next.distance += travel;
        next.current_time = arrival + inst.service(city);
        next.visited.push(*mv);
        next.visited_mask[city] = true;
        if next.visited.len() == inst.len() {
            // Close the tour: the return leg's lateness counts against the
            // depot's due time.
            let back = inst.travel(city, 0);
            next.distance += back;
            next.current_time += back;
            if next.current_time > inst.due(0) {
                next.violations += 1;
            }
        }
        next
    }

    fn score(&self) -> f64 {
        self.tcost()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Depot plus three cities on a unit square, wide windows.
    pub(crate) const TOY: &str = "\
# four city toy instance
4
0 0.0 0.0 0 100 0
1 1.0 0.0 0 100 0
2 1.0 1.0 0 100 0
3 0.0 1.0 0 100 0
";

    #[test]
    fn parses_toy_instance_with_symmetric_distances() {
        let inst = load_tsptw(TOY).unwrap();
        assert_eq!(inst.len(), 4);
        for i in 0..4 {
            assert_eq!(inst.travel(i, i), 0.0);
            for j in 0..4 {
                assert_eq!(inst.travel(i, j), inst.travel(j, i));
            }
        }
        assert_eq!(inst.travel(0, 1), 1.0);
        assert!((inst.travel(0, 2) - 2.0_f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn inverted_window_is_a_parse_error_naming_the_line() {
        let text = "3\n0 0 0 0 10\n1 1 0 0 10\n2 0 1 9 4\n";
        match load_tsptw(text) {
            Err(TsptwError::InvertedWindow { line, city, .. }) => {
                assert_eq!(line, 4);
                assert_eq!(city, 2);
            }
            other => panic!("expected inverted window error, got {other:?}"),
        }
    }

    #[test]
    fn malformed_line_and_count_mismatch_are_errors() {
        assert!(matches!(
            load_tsptw("2\n0 0 0 0 10\nbogus line here now\n"),
            Err(TsptwError::Parse { line: 3, .. })
        ));
        assert!(matches!(
            load_tsptw("3\n0 0 0 0 10\n1 1 0 0 10\n"),
            Err(TsptwError::CityCount { expected: 3, found: 2 })
        ));
    }

    #[test]
    fn tcost_formula() {
        assert_eq!(tcost(100.0, 0), -100.0);
        assert!((tcost(451.06, 1) - (-1000451.06)).abs() < 1e-6);
        assert_eq!(tcost(0.0, 3), -3000000.0);
    }

    #[test]
    fn moves_ordered_by_due_date_when_all_feasible() {
        let inst = Arc::new(
            TsptwInstance::from_coordinates(
                &[(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)],
                &[(0.0, 100.0), (0.0, 50.0), (0.0, 20.0), (0.0, 80.0)],
                &[0.0; 4],
            )
            .unwrap(),
        );
        let state = TsptwState::new(inst);
        assert_eq!(state.legal_moves(), vec![2, 1, 3]);
    }

    #[test]
    fn expired_window_city_goes_last() {
        let inst = Arc::new(
            TsptwInstance::from_coordinates(
                &[(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)],
                // City 3's window is already unreachable from the depot.
                &[(0.0, 100.0), (0.0, 50.0), (0.0, 20.0), (0.0, 0.5)],
                &[0.0; 4],
            )
            .unwrap(),
        );
        let state = TsptwState::new(inst);
        assert_eq!(state.legal_moves(), vec![2, 1, 3]);
        let after = state.play(&3);
        assert_eq!(after.violations(), 1);
    }

    #[test]
    fn waiting_and_service_advance_the_clock() {
        let inst = Arc::new(
            TsptwInstance::from_coordinates(
                &[(0.0, 0.0), (1.0, 0.0)],
                &[(0.0, 100.0), (5.0, 100.0)],
                &[0.0, 2.0],
            )
            .unwrap(),
        );
        let state = TsptwState::new(inst).play(&1);
        // Arrive at t=1, wait until 5, serve 2, return leg 1 => 8.
        assert_eq!(state.current_time(), 8.0);
        assert_eq!(state.distance(), 2.0);
        assert_eq!(state.violations(), 0);
        assert!(state.is_terminal());
    }

    #[test]
    fn return_leg_violation_counts_against_depot_due() {
        let inst = Arc::new(
            TsptwInstance::from_coordinates(
                &[(0.0, 0.0), (10.0, 0.0)],
                &[(0.0, 15.0), (0.0, 100.0)],
                &[0.0, 0.0],
            )
            .unwrap(),
        );
        let state = TsptwState::new(inst).play(&1);
        // Out 10, back 10: home at t=20 > depot due 15.
        assert_eq!(state.violations(), 1);
        assert_eq!(state.tcost(), tcost(20.0, 1));
    }
}
