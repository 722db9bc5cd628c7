use crate::error::{Error, Result};

/// Partition of `{0,…,n−1}` into non-empty blocks; block order is
/// significant only for ordered partitions.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SetPartition {
    pub blocks: Vec<Vec<usize>>,
}

const MAX_N: usize = 9;

/// Unordered partitions via restricted growth strings, then, if `ordered`,
/// every arrangement of their blocks.
pub fn enumerate_set_partitions(n: usize, ordered: bool) -> Result<Vec<SetPartition>> {
    if n > MAX_N {
        return Err(Error::Resource(format!("set partitions of {n} > {MAX_N} elements")));
    }
    let mut out = Vec::new();
    let mut rgs = vec![0usize; n];
    fn go(i: usize, max: usize, rgs: &mut Vec<usize>, out: &mut Vec<SetPartition>) {
        let n = rgs.len();
        if i == n {
            let k = if n == 0 { 0 } else { max + 1 };
            let mut blocks = vec![Vec::new(); k];
            for (e, &b) in rgs.iter().enumerate() {
                blocks[b].push(e);
            }
            out.push(SetPartition { blocks });
            return;
        }
        let top = if i == 0 { 0 } else { max + 1 };
        for b in 0..=top {
            rgs[i] = b;
            go(i + 1, max.max(b), rgs, out);
        }
    }
    go(0, 0, &mut rgs, &mut out);
    if !ordered {
        return Ok(out);
    }
    let mut all = Vec::new();
    for p in out {
        for perm in permutations(p.blocks.len()) {
            all.push(SetPartition {
                blocks: perm.iter().map(|&i| p.blocks[i].clone()).collect(),
            });
        }
    }
    Ok(all)
}

/// All permutations of `0..k` in lexicographic order.
pub(crate) fn permutations(k: usize) -> Vec<Vec<usize>> {
    let mut cur: Vec<usize> = (0..k).collect();
    let mut out = vec![cur.clone()];
    loop {
        let Some(i) = (1..k).rev().find(|&i| cur[i - 1] < cur[i]) else {
            return out;
        };
        let j = (i..k).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
        out.push(cur.clone());
    }
}
