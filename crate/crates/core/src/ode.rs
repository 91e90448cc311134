//! Classical fourth-order Runge-Kutta stepping for first-order systems.

use std::ops::{Add, Mul};

/// Scratch buffers for repeated RK4 steps on a state of fixed length.
#[derive(Debug, Clone)]
pub struct Rk4<T> {
    k1: Vec<T>,
    k2: Vec<T>,
    k3: Vec<T>,
    k4: Vec<T>,
    tmp: Vec<T>,
}

impl<T> Rk4<T>
where
    T: Copy + Default + Add<Output = T> + Mul<f64, Output = T>,
{
    pub fn new(len: usize) -> Self {
        let z = vec![T::default(); len];
        Self { k1: z.clone(), k2: z.clone(), k3: z.clone(), k4: z.clone(), tmp: z }
    }

    /// Advance `y` from `t` to `t + dt` in place; `f(t, y, dydt)` fills the derivative.
    pub fn step<F>(&mut self, f: &mut F, t: f64, y: &mut [T], dt: f64)
    where
        F: FnMut(f64, &[T], &mut [T]),
    {
        let n = y.len();
        f(t, y, &mut self.k1);
        for i in 0..n {
            self.tmp[i] = y[i] + self.k1[i] * (0.5 * dt);
        }
        f(t + 0.5 * dt, &self.tmp, &mut self.k2);
        for i in 0..n {
            self.tmp[i] = y[i] + self.k2[i] * (0.5 * dt);
        }
        f(t + 0.5 * dt, &self.tmp, &mut self.k3);
        for i in 0..n {
            self.tmp[i] = y[i] + self.k3[i] * dt;
        }
        f(t + dt, &self.tmp, &mut self.k4);
        for i in 0..n {
            y[i] = y[i] + (self.k1[i] + self.k2[i] * 2.0 + self.k3[i] * 2.0 + self.k4[i]) * (dt / 6.0);
        }
    }
}
