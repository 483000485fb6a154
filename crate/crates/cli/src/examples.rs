use anyhow::{bail, Context, Result};
use pregroup::construct::{amalgam_cyclic, free, group, random_pregroup};
use pregroup::{FiniteGroup, Pregroup, RandomMode};

/// Builds the pregroup named by a `gen` kind string.
pub fn example(kind: &str, seed: u64) -> Result<Pregroup> {
    let num = |s: &str| -> Result<usize> { s.parse().with_context(|| format!("`{s}` is not a number")) };
    let parts: Vec<&str> = kind.split(':').collect();
    let p = match parts.as_slice() {
        ["s3"] => group(&FiniteGroup::s3(), "s3")?,
        ["klein"] => group(&FiniteGroup::klein("c", "d"), "klein")?,
        ["amalgam", m, n, k] => amalgam_cyclic(num(m)?, num(n)?, num(k)?)?,
        ["random", size, mode] => {
            let mode = match *mode {
                "raw" => RandomMode::Raw,
                "perturbed" => RandomMode::Perturbed,
                other => bail!("unknown random mode `{other}` (raw or perturbed)"),
            };
            random_pregroup(seed, num(size)?, mode)?
        }
        [k] if k.starts_with("free") => free(num(&k[4..])?),
        [k] if k.starts_with('z') => {
            let n = num(&k[1..])?;
            group(&FiniteGroup::cyclic(n, "a"), &format!("z{n}"))?
        }
        [k] if k.starts_with('d') => {
            let n = num(&k[1..])?;
            group(&FiniteGroup::dihedral(n, "r", "f"), &format!("d{n}"))?
        }
        _ => bail!("unknown example kind `{kind}`"),
    };
    Ok(p)
}
