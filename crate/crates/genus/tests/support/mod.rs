pub mod ternary_oracle;
