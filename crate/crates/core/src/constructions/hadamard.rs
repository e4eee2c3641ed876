use crate::error::{invalid, Result};

/// Order of a Sylvester Hadamard matrix: a power of two up to 32.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HadamardOrder(usize);

impl HadamardOrder {
    pub const MAX: usize = 32;

    pub fn new(order: usize) -> Result<Self> {
        if !order.is_power_of_two() || order > Self::MAX {
            return invalid(format!("Hadamard order {order} is not a power of two in 1..={}", Self::MAX));
        }
        Ok(HadamardOrder(order))
    }

    pub fn get(self) -> usize {
        self.0
    }
}

/// Sylvester's `H_1 = [1]`, `H_2n = [[H, H], [H, -H]]` with entries `±1`.
pub fn sylvester_signed(order: usize) -> Result<Vec<Vec<i8>>> {
    let order = HadamardOrder::new(order)?.get();
    let mut h = vec![vec![1i8]];
    while h.len() < order {
        let size = h.len();
        let mut next = vec![vec![0i8; 2 * size]; 2 * size];
        for i in 0..size {
            for j in 0..size {
                let x = h[i][j];
                next[i][j] = x;
                next[i][j + size] = x;
                next[i + size][j] = x;
                next[i + size][j + size] = -x;
            }
        }
        h = next;
    }
    Ok(h)
}

/// The Sylvester matrix with `-1` replaced by `0`.
pub fn sylvester_hadamard(order: usize) -> Result<Vec<Vec<u8>>> {
    Ok(sylvester_signed(order)?
        .into_iter()
        .map(|row| row.into_iter().map(|x| u8::from(x > 0)).collect())
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_orders() {
        assert_eq!(sylvester_hadamard(1).unwrap(), vec![vec![1]]);
        assert_eq!(sylvester_hadamard(2).unwrap(), vec![vec![1, 1], vec![1, 0]]);
        assert!(sylvester_hadamard(6).is_err());
        assert!(sylvester_hadamard(0).is_err());
        assert!(sylvester_hadamard(64).is_err());
    }

    #[test]
    fn rows_are_orthogonal() {
        for order in [2, 4, 8, 16, 32] {
            let h = sylvester_signed(order).unwrap();
            let b = sylvester_hadamard(order).unwrap();
            for i in 0..order {
                for j in 0..order {
                    let dot: i32 = (0..order).map(|c| (h[i][c] * h[j][c]) as i32).sum();
                    assert_eq!(dot, if i == j { order as i32 } else { 0 });
                    if i != j {
                        let agree = (0..order).filter(|&c| b[i][c] == b[j][c]).count();
                        assert_eq!(agree, order / 2);
                    }
                }
            }
        }
    }
}
