"""Django project for exact likelihood orders of random walks on S_n."""
