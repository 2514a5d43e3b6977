//! Plain-text checkpoint format.
//!
//! A whitespace-separated token stream:
//!
//! ```text
//! nntopo-network 1
//! activation relu                      | activation polynomial <k> c_0 .. c_{k-1}
//! hidden <h>
//! dense <out> <in>  <out*in weights, row-major>  <out biases>
//! batchnorm <w> <eps> <momentum> <gamma..> <beta..> <mean..> <var..>   | nobatchnorm
//! ...                                  (dense + batch-norm record per hidden layer)
//! dense <classes> <in> ...             (output layer)
//! ```
//!
//! Floats are written with shortest round-trip formatting, so saving and loading
//! an `f64` network is lossless.

use std::fmt::Write as _;
use std::path::Path;

use super::network::{Activation, BatchNorm, DenseLayer, HiddenLayer, Network};
use super::{Matrix, MlpError, Result};
use crate::scalar::Scalar;

const MAGIC: &str = "nntopo-network";
const VERSION: u32 = 1;

fn push_values<T: Scalar>(out: &mut String, values: &[T]) {
    for (i, v) in values.iter().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        write!(out, "{:?}", v.as_f64()).expect("writing to a string");
    }
    out.push('\n');
}

fn push_dense<T: Scalar>(out: &mut String, d: &DenseLayer<T>) {
    writeln!(out, "dense {} {}", d.outputs(), d.inputs()).expect("writing to a string");
    for r in 0..d.weight.rows() {
        push_values(out, d.weight.row(r));
    }
    push_values(out, &d.bias);
}

/// Serialises a network to the checkpoint text format.
pub fn to_checkpoint<T: Scalar>(net: &Network<T>) -> String {
    let mut out = format!("{MAGIC} {VERSION}\n");
    match &net.activation {
        Activation::Relu => out.push_str("activation relu\n"),
        Activation::Polynomial(c) => {
            write!(out, "activation polynomial {} ", c.len()).expect("writing to a string");
            push_values(&mut out, c);
        }
    }
    writeln!(out, "hidden {}", net.hidden.len()).expect("writing to a string");
    for h in &net.hidden {
        push_dense(&mut out, &h.dense);
        match &h.batch_norm {
            None => out.push_str("nobatchnorm\n"),
            Some(bn) => {
                writeln!(
                    out,
                    "batchnorm {} {:?} {:?}",
                    bn.width(),
                    bn.epsilon.as_f64(),
                    bn.momentum.as_f64()
                )
                .expect("writing to a string");
                push_values(&mut out, &bn.gamma);
                push_values(&mut out, &bn.beta);
                push_values(&mut out, &bn.running_mean);
                push_values(&mut out, &bn.running_var);
            }
        }
    }
    push_dense(&mut out, &net.output);
    out
}

struct Tokens<'a> {
    iter: std::iter::Enumerate<std::str::SplitWhitespace<'a>>,
}

impl<'a> Tokens<'a> {
    fn err(&self, index: usize, reason: impl Into<String>) -> MlpError {
        MlpError::Checkpoint {
            token: index,
            reason: reason.into(),
        }
    }

    fn next(&mut self, what: &str) -> Result<(usize, &'a str)> {
        self.iter.next().ok_or_else(|| MlpError::Checkpoint {
            token: usize::MAX,
            reason: format!("unexpected end of input, expected {what}"),
        })
    }

    fn keyword(&mut self, word: &str) -> Result<()> {
        let (i, t) = self.next(word)?;
        if t != word {
            return Err(self.err(i, format!("expected `{word}`, found `{t}`")));
        }
        Ok(())
    }

    fn usize(&mut self, what: &str) -> Result<usize> {
        let (i, t) = self.next(what)?;
        t.parse().map_err(|_| self.err(i, format!("{what}: `{t}` is not a count")))
    }

    fn float<T: Scalar>(&mut self, what: &str) -> Result<T> {
        let (i, t) = self.next(what)?;
        let v: f64 = t
            .parse()
            .map_err(|_| self.err(i, format!("{what}: `{t}` is not a number")))?;
        if !v.is_finite() {
            return Err(self.err(i, format!("{what} must be finite")));
        }
        Ok(T::lit(v))
    }

    fn floats<T: Scalar>(&mut self, n: usize, what: &str) -> Result<Vec<T>> {
        (0..n).map(|_| self.float(what)).collect()
    }

    fn dense<T: Scalar>(&mut self) -> Result<DenseLayer<T>> {
        self.keyword("dense")?;
        let out = self.usize("output width")?;
        let inp = self.usize("input width")?;
        let w = self.floats(out * inp, "weight")?;
        let b = self.floats(out, "bias")?;
        DenseLayer::new(Matrix::from_vec(out, inp, w), b)
    }
}

/// Parses the checkpoint text format.
pub fn from_checkpoint<T: Scalar>(text: &str) -> Result<Network<T>> {
    let mut tk = Tokens {
        iter: text.split_whitespace().enumerate(),
    };
    tk.keyword(MAGIC)?;
    let version = tk.usize("version")?;
    if version != VERSION as usize {
        return Err(tk.err(1, format!("unsupported version {version}")));
    }
    tk.keyword("activation")?;
    let (i, kind) = tk.next("activation kind")?;
    let activation = match kind {
        "relu" => Activation::Relu,
        "polynomial" => {
            let k = tk.usize("coefficient count")?;
            Activation::Polynomial(tk.floats(k, "coefficient")?)
        }
        other => return Err(tk.err(i, format!("unknown activation `{other}`"))),
    };
    tk.keyword("hidden")?;
    let h = tk.usize("hidden layer count")?;
    let mut hidden = Vec::with_capacity(h);
    for _ in 0..h {
        let dense = tk.dense()?;
        let (i, t) = tk.next("batch-norm record")?;
        let batch_norm = match t {
            "nobatchnorm" => None,
            "batchnorm" => {
                let w = tk.usize("batch-norm width")?;
                let epsilon = tk.float("epsilon")?;
                let momentum = tk.float("momentum")?;
                Some(BatchNorm {
                    gamma: tk.floats(w, "gamma")?,
                    beta: tk.floats(w, "beta")?,
                    running_mean: tk.floats(w, "running mean")?,
                    running_var: tk.floats(w, "running variance")?,
                    epsilon,
                    momentum,
                })
            }
            other => return Err(tk.err(i, format!("expected batch-norm record, found `{other}`"))),
        };
        hidden.push(HiddenLayer { dense, batch_norm });
    }
    let output = tk.dense()?;
    if let Some((i, t)) = tk.iter.next() {
        return Err(tk.err(i, format!("trailing token `{t}`")));
    }
    Network::new(hidden, output, activation)
}

pub fn save_checkpoint<T: Scalar>(net: &Network<T>, path: &Path) -> Result<()> {
    std::fs::write(path, to_checkpoint(net))?;
    Ok(())
}

pub fn load_checkpoint<T: Scalar>(path: &Path) -> Result<Network<T>> {
    from_checkpoint(&std::fs::read_to_string(path)?)
}
