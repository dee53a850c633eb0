//! Truncated f_{a,b,c,d}(t, q) and its transformation rules.

use ising_pbw::qseries::{
    catalogued_transformations, check_transformation, eval_f, random_transformations, NahmParams,
};

fn main() -> ising_pbw::Result<()> {
    let f = eval_f(NahmParams::new(1, 1, 0, 0), 8);
    println!("f_{{1,1,0,0}} to q^8:\n{f}\n");

    let mut instances = catalogued_transformations();
    instances.extend(random_transformations(7, 10));
    for (rule, p) in instances {
        println!("{}", check_transformation(&rule, p, 20)?);
    }
    Ok(())
}
