//! Brute-force minimum number of convex 4-subsets over all general-position
//! n-subsets of a small integer grid. Shares no code with the catalog or the
//! crossing search; its output is committed as a test fixture.
//!
//! Usage: kn_oracle N SIDE

fn orient(a: (i64, i64), b: (i64, i64), c: (i64, i64)) -> i64 {
    ((b.0 - a.0) * (c.1 - a.1) - (b.1 - a.1) * (c.0 - a.0)).signum()
}

fn in_triangle(p: (i64, i64), a: (i64, i64), b: (i64, i64), c: (i64, i64)) -> bool {
    let s = orient(a, b, c);
    orient(a, b, p) == s && orient(b, c, p) == s && orient(c, a, p) == s
}

fn convex(q: [(i64, i64); 4]) -> bool {
    (0..4).all(|i| {
        let o: Vec<_> = (0..4).filter(|&j| j != i).map(|j| q[j]).collect();
        !in_triangle(q[i], o[0], o[1], o[2])
    })
}

struct Search {
    n: usize,
    grid: Vec<(i64, i64)>,
    chosen: Vec<(i64, i64)>,
    best: usize,
    witness: Vec<(i64, i64)>,
}

impl Search {
    fn go(&mut self, start: usize, count: usize) {
        if self.chosen.len() == self.n {
            if count < self.best {
                self.best = count;
                self.witness = self.chosen.clone();
            }
            return;
        }
        for gi in start..self.grid.len() {
            let p = self.grid[gi];
            if self.chosen.is_empty() && p.1 != 0 {
                break;
            }
            let k = self.chosen.len();
            let mut ok = true;
            'col: for i in 0..k {
                for j in i + 1..k {
                    if orient(self.chosen[i], self.chosen[j], p) == 0 {
                        ok = false;
                        break 'col;
                    }
                }
            }
            if !ok {
                continue;
            }
            let mut add = 0;
            for i in 0..k {
                for j in i + 1..k {
                    for l in j + 1..k {
                        if convex([self.chosen[i], self.chosen[j], self.chosen[l], p]) {
                            add += 1;
                        }
                    }
                }
            }
            if count + add >= self.best {
                continue;
            }
            self.chosen.push(p);
            self.go(gi + 1, count + add);
            self.chosen.pop();
        }
    }
}

fn main() {
    let args: Vec<usize> = std::env::args().skip(1).map(|a| a.parse().expect("integer")).collect();
    let (n, side) = (args[0], args[1] as i64);
    // row-major from the bottom row so translations to y = 0 come first
    let grid = (0..side).flat_map(|y| (0..side).map(move |x| (x, y))).collect();
    let mut s = Search {
        n,
        grid,
        chosen: Vec::new(),
        best: usize::MAX,
        witness: Vec::new(),
    };
    s.go(0, 0);
    let pts: Vec<String> = s.witness.iter().map(|&(x, y)| format!("{x},{y}")).collect();
    println!("{n} {side} {} {}", s.best, pts.join(";"));
}
