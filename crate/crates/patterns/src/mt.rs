use sijection::{Element, Sign, SignedSet};

/// Whether `l` interlaces `k` (`l ≺ k`), `l` one shorter than `k`.
pub fn interlaces(l: &[i64], k: &[i64]) -> bool {
    let n = k.len();
    if l.len() + 1 != n {
        return false;
    }
    // 0-based: l[i] sits between k[i] and k[i+1]
    for i in 0..n - 1 {
        let (lo, hi) = (k[i].min(k[i + 1]), k[i].max(k[i + 1]));
        if l[i] < lo || l[i] > hi {
            return false;
        }
    }
    for i in 1..n.saturating_sub(1) {
        if k[i - 1] <= k[i] && k[i] <= k[i + 1] && l[i - 1] == k[i] && l[i] == k[i] {
            return false;
        }
    }
    for i in 0..n - 1 {
        if k[i] > l[i] && l[i] == k[i + 1] && !(i + 2 < n && l[i + 1] == l[i]) {
            return false;
        }
        if k[i] == l[i] && l[i] > k[i + 1] && !(i >= 1 && l[i - 1] == l[i]) {
            return false;
        }
    }
    true
}

fn rows_above(k: &[i64], out: &mut Vec<Vec<i64>>) {
    let n = k.len();
    let mut cur = Vec::with_capacity(n - 1);
    fn rec(k: &[i64], cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        let i = cur.len();
        if i + 1 == k.len() {
            if interlaces(cur, k) {
                out.push(cur.clone());
            }
            return;
        }
        for v in k[i].min(k[i + 1])..=k[i].max(k[i + 1]) {
            cur.push(v);
            rec(k, cur, out);
            cur.pop();
        }
    }
    rec(k, &mut cur, out);
}

/// All monotone triangles with bottom row `k`, as lists of rows from the
/// top row down to `k`.
pub fn monotone_triangles(k: &[i64]) -> Vec<Vec<Vec<i64>>> {
    if k.len() <= 1 {
        return vec![vec![k.to_vec()]];
    }
    let mut above = Vec::new();
    rows_above(k, &mut above);
    let mut out = Vec::new();
    for l in above {
        for mut t in monotone_triangles(&l) {
            t.push(k.to_vec());
            out.push(t);
        }
    }
    out
}

/// `(-1)^r`, `r` counting strict descents in the rows and the local
/// pattern `T_{i,j} > T_{i-1,j} = T_{i,j+1} = T_{i-1,j+1} > T_{i,j+2}`.
pub fn mt_sign(rows: &[Vec<i64>]) -> Sign {
    let mut r = 0;
    for row in rows {
        r += row.windows(2).filter(|w| w[0] > w[1]).count();
    }
    for i in 1..rows.len() {
        let (up, row) = (&rows[i - 1], &rows[i]);
        for j in 0..row.len().saturating_sub(2) {
            if row[j] > up[j] && up[j] == row[j + 1] && row[j + 1] == up[j + 1] && up[j + 1] > row[j + 2] {
                r += 1;
            }
        }
    }
    Sign::parity(r as i64)
}

/// A triangle as a member of [`mt`]: all rows concatenated, top first.
pub fn mt_element(rows: &[Vec<i64>]) -> Element {
    Element::int(rows.concat())
}

pub fn mt_rows(e: &Element) -> Vec<Vec<i64>> {
    let flat = e.ints();
    let mut rows = Vec::new();
    let mut at = 0;
    let mut len = 1;
    while at < flat.len() {
        rows.push(flat[at..at + len].to_vec());
        at += len;
        len += 1;
    }
    rows
}

fn triangle_set(tag: String, triangles: impl IntoIterator<Item = Vec<Vec<i64>>>) -> SignedSet {
    SignedSet::atoms(tag, triangles.into_iter().map(|t| (t.concat(), mt_sign(&t))).collect())
}

/// `MT(k)`, the signed set of monotone triangles with bottom row `k`.
pub fn mt(k: &[i64]) -> SignedSet {
    triangle_set(format!("MT{k:?}"), monotone_triangles(k))
}

/// `MT_i(k)`: triangles with `k_1` at the start of exactly the last `i` rows.
pub fn mt_i(k: &[i64], i: usize) -> SignedSet {
    let n = k.len();
    let keep = |t: &Vec<Vec<i64>>| {
        i >= 1 && i <= n && (n - i..n).all(|r| t[r][0] == k[0]) && (i == n || t[n - i - 1][0] != k[0])
    };
    triangle_set(format!("MT_{i}{k:?}"), monotone_triangles(k).into_iter().filter(keep))
}

/// `MT^i(k)`: triangles with `k_n` at the end of exactly the last `i` rows.
pub fn mt_upper_i(k: &[i64], i: usize) -> SignedSet {
    let n = k.len();
    let keep = |t: &Vec<Vec<i64>>| {
        i >= 1 && i <= n && (n - i..n).all(|r| t[r][r] == k[n - 1]) && (i == n || t[n - i - 1][n - i - 1] != k[n - 1])
    };
    triangle_set(format!("MT^{i}{k:?}"), monotone_triangles(k).into_iter().filter(keep))
}

/// Row `r` of the triangle lists the columns where the sum of the first `r`
/// rows of the ASM is 1.
pub fn asm_to_mt(a: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    let mut sums = vec![0; n];
    let mut rows = Vec::with_capacity(n);
    for row in a {
        for (s, x) in sums.iter_mut().zip(row) {
            *s += x;
        }
        rows.push((1..=n as i64).filter(|&c| sums[c as usize - 1] == 1).collect());
    }
    rows
}

pub fn mt_to_asm(rows: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = rows.len();
    let mut prev = vec![0; n];
    let mut out = Vec::with_capacity(n);
    for row in rows {
        let mut cur = vec![0; n];
        for &c in row {
            cur[c as usize - 1] = 1;
        }
        out.push(cur.iter().zip(&prev).map(|(c, p)| c - p).collect());
        prev = cur;
    }
    out
}

/// Centered triangular layout, one row per line.
pub fn format_triangle(rows: &[Vec<i64>]) -> String {
    let width = rows.iter().flatten().map(|x| x.to_string().len()).max().unwrap_or(1);
    let n = rows.len();
    rows.iter()
        .enumerate()
        .map(|(r, row)| {
            let cells: Vec<String> = row.iter().map(|x| format!("{x:>width$}")).collect();
            format!("{}{}", " ".repeat((n - 1 - r) * width), cells.join(&" ".repeat(width)))
        })
        .collect::<Vec<_>>()
        .join("\n")
}
