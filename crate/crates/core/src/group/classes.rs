use super::Group;
use crate::set::ElementSet;

/// Conjugacy-class partition of a group.
///
/// Classes are numbered by their least element, so class 0 is `{1}`.
#[derive(Clone, Debug)]
pub struct ClassData {
    pub class_of: Vec<u32>,
    pub reps: Vec<usize>,
    pub sizes: Vec<usize>,
    pub inverse_class: Vec<usize>,
    pub centralizer_order: Vec<usize>,
    pub element_orders: Vec<usize>,
}

impl ClassData {
    pub fn count(&self) -> usize {
        self.reps.len()
    }

    pub fn class(&self, x: usize) -> usize {
        self.class_of[x] as usize
    }

    /// A class is real when it is closed under inversion.
    pub fn is_real(&self, c: usize) -> bool {
        self.inverse_class[c] == c
    }

    pub fn members(&self, c: usize) -> impl Iterator<Item = usize> + '_ {
        self.class_of.iter().enumerate().filter(move |(_, &k)| k as usize == c).map(|(x, _)| x)
    }

    pub fn class_set(&self, c: usize) -> ElementSet {
        ElementSet::from_elements(self.class_of.len(), self.members(c))
    }
}

pub(crate) fn compute(g: &Group) -> ClassData {
    let n = g.order();
    let gens = g.generators();
    let inv_gens: Vec<usize> = gens.iter().map(|&s| g.inverse(s)).collect();
    let mut class_of = vec![u32::MAX; n];
    let mut reps = Vec::new();
    let mut sizes = Vec::new();
    let mut queue = Vec::new();
    for x in 0..n {
        if class_of[x] != u32::MAX {
            continue;
        }
        let c = reps.len() as u32;
        reps.push(x);
        class_of[x] = c;
        queue.clear();
        queue.push(x);
        let mut i = 0;
        while i < queue.len() {
            let y = queue[i];
            i += 1;
            for (&s, &si) in gens.iter().zip(&inv_gens) {
                let z = g.mul(g.mul(si, y), s);
                if class_of[z] == u32::MAX {
                    class_of[z] = c;
                    queue.push(z);
                }
            }
        }
        sizes.push(queue.len());
    }
    let inverse_class = reps.iter().map(|&r| class_of[g.inverse(r)] as usize).collect();
    let centralizer_order = sizes.iter().map(|&s| n / s).collect();
    let element_orders = reps.iter().map(|&r| g.element_order(r)).collect();
    ClassData {
        class_of,
        reps,
        sizes,
        inverse_class,
        centralizer_order,
        element_orders,
    }
}

impl Group {
    /// Conjugacy classes, computed once per group.
    pub fn classes(&self) -> &ClassData {
        self.cache_classes().get_or_init(|| compute(self))
    }
}

/// Free-function form of [`Group::classes`].
pub fn conjugacy_classes(g: &Group) -> &ClassData {
    g.classes()
}
