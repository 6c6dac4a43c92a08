//! Fog-fog link graph for one placement at one timeframe: adjacency,
//! connected components, the largest component `G*`, and per-user
//! coverage assignment.

use crate::error::Result;
use crate::model::{covers_point, ground_distance, PlacementVector, Scenario};

/// Disjoint-set forest with path compression and union by size.
#[derive(Debug, Clone)]
pub struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    pub fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = x;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    /// Unites the sets holding `a` and `b`; returns false if already joined.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        true
    }

    pub fn same(&mut self, a: usize, b: usize) -> bool {
        self.find(a) == self.find(b)
    }
}

/// Link graph plus coverage bookkeeping for one placement.
///
/// Dead UAVs belong to no component, carry no links, and cover nobody;
/// with every UAV alive the components partition `0..n_uavs`.
#[derive(Debug, Clone, PartialEq)]
pub struct Topology {
    pub n_uavs: usize,
    pub alive: Vec<bool>,
    /// Sorted neighbor lists; empty for dead UAVs.
    pub adjacency: Vec<Vec<usize>>,
    /// Sorted member lists, ordered by smallest member index.
    pub components: Vec<Vec<usize>>,
    /// Members of the largest component. Size ties break toward the
    /// component holding the lowest UAV index.
    pub largest: Vec<usize>,
    pub in_largest: Vec<bool>,
    /// Per user: covered by at least one alive UAV.
    pub user_cover_any: Vec<bool>,
    /// Per user: covered by at least one member of the largest component.
    pub user_cover_largest: Vec<bool>,
    /// Per user: nearest covering alive UAV (ties toward the lower index).
    /// This is the node that carries the user's traffic.
    pub user_assignment: Vec<Option<usize>>,
    /// Assigned users per UAV.
    pub uav_load: Vec<usize>,
}

impl Topology {
    /// Number of UAVs in the largest connected component.
    pub fn nc_largest(&self) -> usize {
        self.largest.len()
    }

    /// `|G*| / n_uavs`. Zero when every UAV is dead.
    pub fn connectivity_ratio(&self) -> f64 {
        self.largest.len() as f64 / self.n_uavs as f64
    }

    /// Builds component structure from an explicit edge list over the
    /// alive subset. Users are handled separately by the full builders.
    fn components_from_edges(n: usize, alive: &[bool], edges: &[(usize, usize)]) -> (Vec<Vec<usize>>, Vec<usize>, Vec<bool>) {
        let mut uf = UnionFind::new(n);
        for &(a, b) in edges {
            uf.union(a, b);
        }
        let mut members: Vec<Vec<usize>> = vec![Vec::new(); n];
        for i in 0..n {
            if alive[i] {
                members[uf.find(i)].push(i);
            }
        }
        // Nodes visited in index order, so each member list is sorted;
        // the lists themselves come out in root order, which is not the
        // documented smallest-member order until re-sorted.
        let mut components: Vec<Vec<usize>> = members.into_iter().filter(|c| !c.is_empty()).collect();
        components.sort_by_key(|c| c[0]);
        let mut largest: Vec<usize> = Vec::new();
        for comp in &components {
            if comp.len() > largest.len() {
                largest = comp.clone();
            }
        }
        let mut in_largest = vec![false; n];
        for &i in &largest {
            in_largest[i] = true;
        }
        (components, largest, in_largest)
    }
}

/// Builds the topology with every UAV alive.
pub fn build_topology(placement: &PlacementVector, scenario: &Scenario) -> Result<Topology> {
    build_topology_masked(placement, scenario, &vec![true; scenario.n_uavs])
}

/// Builds the topology over the alive subset of the fleet.
pub fn build_topology_masked(
    placement: &PlacementVector,
    scenario: &Scenario,
    alive: &[bool],
) -> Result<Topology> {
    let n = scenario.n_uavs;
    if placement.n_uavs() != n {
        return Err(crate::error::Error::PlacementLength {
            n_uavs: n,
            expected: 2 * n,
            actual: placement.coords().len(),
        });
    }
    assert_eq!(alive.len(), n, "alive mask length must match fleet size");

    let radius_sq = scenario.comm_radius * scenario.comm_radius;
    let mut adjacency: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for i in 0..n {
        if !alive[i] {
            continue;
        }
        let pi = placement.position(i);
        for j in (i + 1)..n {
            if !alive[j] {
                continue;
            }
            let pj = placement.position(j);
            let dx = pi.x - pj.x;
            let dy = pi.y - pj.y;
            if dx * dx + dy * dy <= radius_sq {
                adjacency[i].push(j);
                adjacency[j].push(i);
                edges.push((i, j));
            }
        }
    }

    let (components, largest, in_largest) = Topology::components_from_edges(n, alive, &edges);

    let m = scenario.users.len();
    let mut user_cover_any = vec![false; m];
    let mut user_cover_largest = vec![false; m];
    let mut user_assignment: Vec<Option<usize>> = vec![None; m];
    let mut uav_load = vec![0usize; n];
    for (j, user) in scenario.users.iter().enumerate() {
        if !user.active {
            continue;
        }
        let mut best: Option<(f64, usize)> = None;
        for i in 0..n {
            if !alive[i] {
                continue;
            }
            let pi = placement.position(i);
            if covers_point(pi, user.pos, scenario.coverage_mode, scenario.altitude, scenario.comm_radius) {
                user_cover_any[j] = true;
                if in_largest[i] {
                    user_cover_largest[j] = true;
                }
                let d = ground_distance(pi, user.pos);
                if best.map_or(true, |(bd, _)| d < bd) {
                    best = Some((d, i));
                }
            }
        }
        if let Some((_, i)) = best {
            user_assignment[j] = Some(i);
            uav_load[i] += 1;
        }
    }

    Ok(Topology {
        n_uavs: n,
        alive: alive.to_vec(),
        adjacency,
        components,
        largest,
        in_largest,
        user_cover_any,
        user_cover_largest,
        user_assignment,
        uav_load,
    })
}
