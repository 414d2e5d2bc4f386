use crate::gf3::TernaryCode;

/// One direct summand: its coordinate support and the code it carries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub support: Vec<usize>,
    pub code: TernaryCode,
}

/// Finest splitting of the coordinates into blocks with `C = ⊕ C|_block`.
///
/// Row supports of the reduced echelon generator are the fundamental
/// cocircuits of the column matroid for the pivot basis, so their connected
/// components are exactly the matroid components.
pub fn decompose(code: &TernaryCode) -> Vec<Component> {
    let n = code.length();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut y = x;
        while p[y] != r {
            let nx = p[y];
            p[y] = r;
            y = nx;
        }
        r
    }
    for row in code.generator() {
        let mut support = row
            .iter()
            .enumerate()
            .filter(|(_, &x)| x != 0)
            .map(|(i, _)| i);
        if let Some(first) = support.next() {
            for j in support {
                let (a, b) = (find(&mut parent, first), find(&mut parent, j));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
    }
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let mut block_of_root = vec![usize::MAX; n];
    for i in 0..n {
        let r = find(&mut parent, i);
        if block_of_root[r] == usize::MAX {
            block_of_root[r] = blocks.len();
            blocks.push(Vec::new());
        }
        blocks[block_of_root[r]].push(i);
    }
    blocks
        .into_iter()
        .map(|support| Component {
            code: code.restrict(&support),
            support,
        })
        .collect()
}
