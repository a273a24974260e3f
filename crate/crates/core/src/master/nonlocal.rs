use crate::scalar::Real;

use super::{build_local_generator, HeightGenerator, MasterError, RateOperator};

/// Height dynamics of the nonlocal model with infinitely fast all-to-all
/// hopping: the source acts, then the distribution is averaged within each
/// weight class.
///
/// On distributions that are uniform within weight classes this is the
/// exact counterpart of [`super::SizeGenerator`].
#[derive(Clone, Debug)]
pub struct NonlocalHeightOperator<T> {
    source: HeightGenerator<T>,
    weight: Vec<u8>,
    class_size: Vec<T>,
}

impl<T: Real> NonlocalHeightOperator<T> {
    pub fn new(l: usize, b: T) -> Result<Self, MasterError> {
        let source = build_local_generator(l, T::zero(), b)?;
        let dim = 1usize << l;
        let weight: Vec<u8> = (0..dim).map(|s| (s as u32).count_ones() as u8).collect();
        let mut counts = vec![0usize; l + 1];
        for &w in &weight {
            counts[w as usize] += 1;
        }
        let class_size = counts.into_iter().map(T::from_count).collect();
        Ok(Self { source, weight, class_size })
    }

    pub fn sites(&self) -> usize {
        self.source.sites()
    }
}

impl<T: Real> RateOperator<T> for NonlocalHeightOperator<T> {
    fn dim(&self) -> usize {
        self.weight.len()
    }

    fn apply(&self, f: &[T], out: &mut [T]) {
        self.source.apply(f, out);
        let mut totals = vec![T::zero(); self.class_size.len()];
        for (s, &v) in out.iter().enumerate() {
            totals[self.weight[s] as usize] += v;
        }
        for (s, v) in out.iter_mut().enumerate() {
            let w = self.weight[s] as usize;
            *v = totals[w] / self.class_size[w];
        }
    }

    fn max_exit_rate(&self) -> T {
        self.source.max_exit_rate()
    }

    fn size_of_index(&self, index: usize) -> usize {
        index.count_ones() as usize
    }
}
